"""Readers for annotation files and detection dumps (JSON Lines).

Annotation record:
    {"image_id": "000005", "annotations": [{"category": 8, "x": 0, "y": 0, "w": 10, "h": 20}]}

Detection record (embedding detector or class-probability baseline):
    {"image_id": "000005", "detections": [
        {"x": 0, "y": 0, "w": 10, "h": 20, "objectness": 0.9, "centeredness": 0.8,
         "embedding": [0.6, 0.8]},
        {"x": 5, "y": 5, "w": 4, "h": 4, "probs": [0.1, 0.7, 0.2]}]}

Blank lines are skipped. Every malformed record raises RecordError naming the
file and 1-based line number.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator

from codet.errors import CodetError, RecordError
from codet.types.annotation import AnnotatedImage, Annotation, ImageId
from codet.types.box import BBox
from codet.types.detection import ClassProbBox, Detection, Embedding


@dataclass(frozen=True)
class DetectionRecord:
    """The detections of one image, in dump order."""

    image_id: ImageId
    detections: tuple[Detection, ...] | tuple[ClassProbBox, ...]


def _field(obj: dict[str, Any], name: str) -> Any:
    if name not in obj:
        raise RecordError(f"missing field '{name}'")
    return obj[name]


def _number(obj: dict[str, Any], name: str) -> float:
    value = _field(obj, name)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise RecordError(f"field '{name}' must be a number, got {value!r}")
    return float(value)


def _numbers(obj: dict[str, Any], name: str) -> list[float]:
    value = _field(obj, name)
    if not isinstance(value, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        raise RecordError(f"field '{name}' must be a list of numbers")
    return [float(v) for v in value]


def _image_id(obj: dict[str, Any]) -> ImageId:
    value = _field(obj, "image_id")
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise RecordError(f"image_id must be a string or integer, got {value!r}")
    return value


def _objects(obj: dict[str, Any], name: str) -> list[dict[str, Any]]:
    items = _field(obj, name)
    if not isinstance(items, list) or not all(isinstance(i, dict) for i in items):
        raise RecordError(f"field '{name}' must be a list of objects")
    return items


def _box(obj: dict[str, Any]) -> BBox:
    return BBox(_number(obj, "x"), _number(obj, "y"), _number(obj, "w"), _number(obj, "h"))


def parse_annotation_record(obj: Any) -> AnnotatedImage:
    if not isinstance(obj, dict):
        raise RecordError("record must be a JSON object")
    annotations = []
    for item in _objects(obj, "annotations"):
        category = _field(item, "category")
        if isinstance(category, bool) or not isinstance(category, int) or category < 0:
            raise RecordError(f"category must be a non-negative integer, got {category!r}")
        annotations.append(Annotation(category, _box(item)))
    return AnnotatedImage(_image_id(obj), tuple(annotations))


def _detection(item: dict[str, Any]) -> Detection | ClassProbBox:
    box = _box(item)
    if "embedding" in item:
        return Detection(
            box=box,
            objectness=_number(item, "objectness"),
            centeredness=_number(item, "centeredness"),
            embedding=Embedding(_numbers(item, "embedding")),
        )
    if "probs" in item:
        return ClassProbBox(box, tuple(_numbers(item, "probs")))
    raise RecordError("detection needs an 'embedding' or a 'probs' field")


def parse_detection_record(obj: Any) -> DetectionRecord:
    if not isinstance(obj, dict):
        raise RecordError("record must be a JSON object")
    detections = tuple(_detection(item) for item in _objects(obj, "detections"))
    return DetectionRecord(_image_id(obj), detections)  # type: ignore[arg-type]


def _json_lines(path: Path) -> Iterator[tuple[int, Any]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise RecordError(f"cannot read file: {e.strerror}", path) from e
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            yield number, json.loads(line)
        except json.JSONDecodeError as e:
            raise RecordError(f"invalid JSON: {e.msg}", path, number) from e


def _located(error: CodetError, path: Path, line: int) -> RecordError:
    message = error.args[0] if error.args else str(error)
    return RecordError(str(message), path, line)


def read_annotations(path: Path) -> list[AnnotatedImage]:
    """Read an annotation file; image ids must be unique."""
    images: list[AnnotatedImage] = []
    seen: set[ImageId] = set()
    for line, obj in _json_lines(path):
        try:
            image = parse_annotation_record(obj)
        except CodetError as e:
            raise _located(e, path, line) from e
        if image.image_id in seen:
            raise RecordError(f"duplicate image_id {image.image_id!r}", path, line)
        seen.add(image.image_id)
        images.append(image)
    return images


def read_detections(path: Path) -> list[DetectionRecord]:
    """Read a detection dump, one record per image."""
    records = []
    for line, obj in _json_lines(path):
        try:
            records.append(parse_detection_record(obj))
        except CodetError as e:
            raise _located(e, path, line) from e
    return records
