"""Tests for the annotation and detection readers."""

import pytest

from codet.errors import RecordError
from codet.io import read_annotations, read_detections
from codet.io.records import parse_annotation_record, parse_detection_record
from codet.types.box import BBox
from codet.types.detection import ClassProbBox, Detection


def annotation(category: int = 1, x: float = 0, y: float = 0) -> dict:
    return {"category": category, "x": x, "y": y, "w": 10, "h": 20}


class TestAnnotations:
    def test_parse(self):
        image = parse_annotation_record(
            {"image_id": "000005", "annotations": [annotation(8), annotation(3, 5, 5)]}
        )
        assert image.image_id == "000005"
        assert image.categories == {3, 8}
        assert image.annotations[1].box == BBox(5, 5, 10, 20)

    def test_read_file(self, write_jsonl):
        path = write_jsonl(
            "gt.jsonl",
            [{"image_id": 1, "annotations": [annotation()]}, {"image_id": 2, "annotations": []}],
        )
        images = read_annotations(path)
        assert [image.image_id for image in images] == [1, 2]
        assert images[1].annotations == ()

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "gt.jsonl"
        path.write_text('\n{"image_id": 1, "annotations": []}\n\n')
        assert len(read_annotations(path)) == 1

    def test_duplicate_id(self, write_jsonl):
        path = write_jsonl(
            "gt.jsonl",
            [{"image_id": 1, "annotations": []}, {"image_id": 1, "annotations": []}],
        )
        with pytest.raises(RecordError, match="gt.jsonl:2: duplicate image_id") as info:
            read_annotations(path)
        assert info.value.line == 2

    @pytest.mark.parametrize(
        "record,message",
        [
            ({"annotations": []}, "missing field 'image_id'"),
            ({"image_id": 1}, "missing field 'annotations'"),
            ({"image_id": 1, "annotations": [annotation(-1)]}, "non-negative integer"),
            ({"image_id": 1, "annotations": [{"category": 1, "x": 0}]}, "missing field 'y'"),
            ({"image_id": True, "annotations": []}, "string or integer"),
            ([1, 2], "JSON object"),
        ],
    )
    def test_malformed(self, write_jsonl, record, message):
        path = write_jsonl("gt.jsonl", [record])
        with pytest.raises(RecordError, match=message) as info:
            read_annotations(path)
        assert info.value.line == 1

    def test_negative_size(self, write_jsonl):
        bad = {"category": 1, "x": 0, "y": 0, "w": -1, "h": 2}
        path = write_jsonl("gt.jsonl", [{"image_id": 1, "annotations": [bad]}])
        with pytest.raises(RecordError, match="non-negative"):
            read_annotations(path)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "gt.jsonl"
        path.write_text('{"image_id": 1, "annotations": []}\n{oops\n')
        with pytest.raises(RecordError, match="invalid JSON") as info:
            read_annotations(path)
        assert info.value.line == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(RecordError, match="cannot read file"):
            read_annotations(tmp_path / "absent.jsonl")


class TestDetections:
    def test_embedding_detection(self):
        record = parse_detection_record(
            {
                "image_id": "a",
                "detections": [
                    {
                        "x": 0, "y": 0, "w": 10, "h": 20,
                        "objectness": 0.9, "centeredness": 0.8, "embedding": [3, 4],
                    }
                ],
            }
        )
        (detection,) = record.detections
        assert isinstance(detection, Detection)
        assert detection.embedding.values.tolist() == [0.6, 0.8]

    def test_class_probabilities(self):
        record = parse_detection_record(
            {"image_id": "a", "detections": [{"x": 5, "y": 5, "w": 4, "h": 4, "probs": [0.1, 0.9]}]}
        )
        assert record.detections == (ClassProbBox(BBox(5, 5, 4, 4), (0.1, 0.9)),)

    def test_read_file(self, write_jsonl):
        path = write_jsonl(
            "dets.jsonl",
            [{"image_id": "a", "detections": []}, {"image_id": "a", "detections": []}],
        )
        assert [r.image_id for r in read_detections(path)] == ["a", "a"]

    @pytest.mark.parametrize(
        "item,message",
        [
            ({"x": 0, "y": 0, "w": 1, "h": 1}, "'embedding' or a 'probs'"),
            ({"x": 0, "y": 0, "w": 1, "h": 1, "probs": ["a"]}, "list of numbers"),
            ({"x": 0, "y": 0, "w": 1, "h": 1, "probs": [1.5]}, r"\[0, 1\]"),
            ({"x": 0, "y": 0, "w": 1, "h": 1, "probs": [0.6, 0.6]}, "sum to at most 1"),
            (
                {"x": 0, "y": 0, "w": 1, "h": 1, "objectness": 1, "centeredness": 1,
                 "embedding": [0, 0]},
                "zero",
            ),
            ({"x": "0", "y": 0, "w": 1, "h": 1, "probs": [1]}, "must be a number"),
        ],
    )
    def test_malformed(self, write_jsonl, item, message):
        path = write_jsonl("dets.jsonl", [{"image_id": "a", "detections": []},
                                          {"image_id": "b", "detections": [item]}])
        with pytest.raises(RecordError, match=message) as info:
            read_detections(path)
        assert info.value.line == 2
