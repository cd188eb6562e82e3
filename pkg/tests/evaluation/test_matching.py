"""Tests for pair enumeration and the class-probability baselines."""

import math

import pytest

from codet.errors import ArgumentError, ShapeError
from codet.evaluation import EvalConfig, ScoreForm, enumerate_top_pairs, hard_match, soft_match
from codet.types.box import BBox
from codet.types.detection import ClassProbBox, Detection, Embedding

BOX = BBox(0, 0, 4, 4)


def det(p_o: float, embedding: list[float], p_c: float = 1.0) -> Detection:
    return Detection(BOX, p_o, p_c, Embedding(embedding))


def probs(*values: float) -> ClassProbBox:
    return ClassProbBox(BOX, values)


class TestEnumerateTopPairs:
    def test_single_pair(self):
        pairs = enumerate_top_pairs([det(1, [1, 0])], [det(1, [1, 0])], EvalConfig(top_k=1))
        assert [(p.index_a, p.index_b) for p in pairs] == [(0, 0)]
        assert pairs[0].score == pytest.approx(1.0)

    def test_fewer_than_top_k(self, rng):
        dets = [det(rng.uniform(), [rng.gauss(), rng.gauss()]) for _ in range(5)]
        pairs = enumerate_top_pairs(dets, dets, EvalConfig(top_k=100))
        assert len(pairs) == 25
        assert [p.score for p in pairs] == sorted((p.score for p in pairs), reverse=True)

    def test_truncated_to_top_k(self, rng):
        dets = [det(rng.uniform(), [rng.gauss(), rng.gauss()]) for _ in range(5)]
        everything = enumerate_top_pairs(dets, dets, EvalConfig())
        assert enumerate_top_pairs(dets, dets, EvalConfig(top_k=7)) == everything[:7]

    def test_ties_are_index_ordered(self):
        dets = [det(0.5, [1, 0]) for _ in range(3)]
        pairs = enumerate_top_pairs(dets, dets[:2], EvalConfig())
        assert [(p.index_a, p.index_b) for p in pairs] == [
            (0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)
        ]

    def test_similarity_threshold_is_strict(self):
        a = [det(1, [1, 0]), det(1, [0, 1])]
        pairs = enumerate_top_pairs(a, [det(1, [1, 0])], EvalConfig(similarity_threshold=0.0))
        assert [(p.index_a, p.index_b) for p in pairs] == [(0, 0)]

    def test_score_threshold(self):
        a = [det(0.2, [1, 0]), det(0.9, [1, 0])]
        pairs = enumerate_top_pairs(a, [det(1, [1, 0])], EvalConfig(score_threshold=0.5))
        assert [p.index_a for p in pairs] == [1]

    def test_combined_score_form(self):
        a = [det(0.5, [1, 0])]
        b = [det(0.5, [0.5, math.sqrt(3) / 2])]
        pairs = enumerate_top_pairs(a, b, EvalConfig(score_form=ScoreForm.COMBINED_SQRT))
        assert pairs[0].score == pytest.approx(0.25 * math.sqrt(0.5))

    def test_negative_cosine_ranks_last(self):
        a = [det(1, [-1, 0]), det(0.1, [1, 0])]
        pairs = enumerate_top_pairs(a, [det(1, [1, 0])], EvalConfig())
        assert [p.index_a for p in pairs] == [1, 0]
        assert pairs[1].score == pytest.approx(-1.0)

    def test_empty_side(self):
        assert enumerate_top_pairs([], [det(1, [1, 0])], EvalConfig()) == []


class TestHardMatch:
    def test_disjoint_argmax(self):
        assert hard_match([probs(0.9, 0.1)], [probs(0.2, 0.8)], EvalConfig()) == []

    def test_product_of_maxima(self):
        pairs = hard_match(
            [probs(0.05, 0.0, 0.05, 0.9)], [probs(0.1, 0.05, 0.05, 0.8)], EvalConfig()
        )
        assert len(pairs) == 1
        assert pairs[0].score == pytest.approx(0.72)

    def test_uniform_ties_to_category_zero(self):
        boxes = [probs(0.5, 0.5), probs(0.5, 0.5)]
        assert len(hard_match(boxes, boxes, EvalConfig())) == 4

    def test_category_count_mismatch(self):
        with pytest.raises(ShapeError, match="category count"):
            hard_match([probs(1.0, 0.0)], [probs(1.0, 0.0, 0.0)], EvalConfig())


class TestSoftMatch:
    def test_identical(self):
        pairs = soft_match([probs(0.3, 0.7)], [probs(0.3, 0.7)], EvalConfig())
        assert pairs[0].score == pytest.approx(1.0)

    def test_orthogonal_one_hot(self):
        pairs = soft_match([probs(1.0, 0.0)], [probs(0.0, 1.0)], EvalConfig())
        assert pairs[0].score == 0.0

    def test_cosine(self):
        pairs = soft_match([probs(0.6, 0.4)], [probs(0.4, 0.6)], EvalConfig())
        assert pairs[0].score == pytest.approx(0.48 / 0.52)
        assert pairs[0].score == pytest.approx(0.923, abs=1e-3)

    def test_zero_vector(self):
        with pytest.raises(ArgumentError, match="non-zero"):
            soft_match([probs(0.0, 0.0)], [probs(1.0, 0.0)], EvalConfig())

    def test_one_hot_agrees_with_hard_match(self):
        a = [probs(1, 0, 0), probs(0, 1, 0), probs(0, 0, 1)]
        b = [probs(0, 1, 0), probs(1, 0, 0)]
        cfg = EvalConfig(similarity_threshold=0.0)
        soft = {(p.index_a, p.index_b) for p in soft_match(a, b, cfg)}
        hard = {(p.index_a, p.index_b) for p in hard_match(a, b, cfg)}
        assert soft == hard == {(0, 1), (1, 0)}


class TestEvalConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [{"top_k": 0}, {"iou_threshold": 0.0}, {"iou_threshold": 1.0}, {"score_threshold": 2}],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ArgumentError):
            EvalConfig(**kwargs)

    def test_coerces_strings(self):
        cfg = EvalConfig(score_form="combined_sqrt", ap_mode="eleven_point")
        assert cfg.score_form is ScoreForm.COMBINED_SQRT

    def test_at_iou(self):
        assert EvalConfig().at_iou(0.7).iou_threshold == 0.7
        with pytest.raises(ArgumentError):
            EvalConfig().at_iou(1.5)
