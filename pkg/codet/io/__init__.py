"""JSON Lines readers and writers."""

from codet.io.records import (
    DetectionRecord,
    parse_annotation_record,
    parse_detection_record,
    read_annotations,
    read_detections,
)
from codet.io.writers import TOOL_NAME, header, render_jsonl, write_jsonl

__all__ = [
    "TOOL_NAME",
    "DetectionRecord",
    "header",
    "parse_annotation_record",
    "parse_detection_record",
    "read_annotations",
    "read_detections",
    "render_jsonl",
    "write_jsonl",
]
