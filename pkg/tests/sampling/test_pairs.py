"""Tests for image pairing, the class index and the batch sampler."""

import logging

import pytest

from codet.errors import ArgumentError
from codet.numerics.rng import Rng
from codet.sampling import (
    build_class_index,
    build_pair_list,
    choose_base_class,
    sample_batch,
    sample_gt_pairs,
    sample_pair_subset,
)
from codet.types.annotation import AnnotatedImage, Annotation
from codet.types.box import BBox

BOX = BBox(0, 0, 1, 1)


def image(image_id: int | str, *categories: int) -> AnnotatedImage:
    return AnnotatedImage(image_id, tuple(Annotation(c, BOX) for c in categories))


@pytest.fixture
def dataset() -> list[AnnotatedImage]:
    # base class 0 sits in images 0 and 1; category 5 in images 0 and 2
    return [image(0, 0, 5), image(1, 0, 7), image(2, 5), image(3, 7, 9)]


class TestPairList:
    def test_shared_category_only(self):
        assert build_pair_list([image(0, 1), image(1, 1), image(2, 2)]) == [(0, 1)]

    def test_complete_graph(self):
        pairs = build_pair_list([image(i, 3) for i in range(5)])
        assert len(pairs) == 10
        assert pairs[:4] == [(0, 1), (0, 2), (0, 3), (0, 4)]

    def test_dataset_order(self, dataset):
        assert build_pair_list(dataset) == [(0, 1), (0, 2), (1, 3)]

    def test_empty(self):
        assert build_pair_list([]) == []

    def test_duplicate_ids(self):
        with pytest.raises(ArgumentError, match="Duplicate"):
            build_pair_list([image("a", 1), image("a", 1)])

    def test_images_without_annotations(self):
        assert build_pair_list([image(0), image(1)]) == []


class TestClassIndex:
    def test_set_semantics(self):
        index = build_class_index([image(0, 1, 1, 2)])
        assert index[1] == [0]
        assert index[2] == [0]

    def test_dataset_order(self):
        index = build_class_index([image("x", 4), image("y", 4)])
        assert index[4] == ["x", "y"]

    def test_empty(self):
        index = build_class_index([])
        assert len(index) == 0
        assert 3 not in index

    def test_base_class_choice(self, dataset):
        # categories 0, 5 and 7 each have two images
        assert choose_base_class(build_class_index(dataset)) == 0
        assert choose_base_class(build_class_index([image(0, 2, 3), image(1, 3)])) == 3

    def test_base_class_of_empty_index(self):
        with pytest.raises(ArgumentError, match="empty"):
            choose_base_class(build_class_index([]))


class TestSampleBatch:
    def test_support(self, dataset):
        index = build_class_index(dataset)
        batch = sample_batch(index, dataset, 0, 50, Rng(1))
        assert len(batch) == 50
        for first, second in batch:
            assert first in (0, 1)
            assert second != first
            # the second image shares a non-base category with the first
            assert dataset[second].categories & (dataset[first].categories - {0})

    def test_deterministic(self, dataset):
        index = build_class_index(dataset)
        assert sample_batch(index, dataset, 0, 8, Rng(9)) == sample_batch(
            index, dataset, 0, 8, Rng(9)
        )

    def test_base_only_images(self, caplog):
        dataset = [image(0, 4), image(1, 4)]
        index = build_class_index(dataset)
        with caplog.at_level(logging.WARNING, logger="codet.sampling.pairs"):
            batch = sample_batch(index, dataset, 4, 5, Rng(0), retry_budget=10)
        assert batch == []
        assert "no pair could be drawn" in caplog.text

    def test_second_image_never_equals_first(self):
        # image 0 is the only holder of category 2, so every draw retries
        dataset = [image(0, 1, 2), image(1, 1)]
        batch = sample_batch(build_class_index(dataset), dataset, 1, 3, Rng(0), retry_budget=5)
        assert batch == []

    def test_zero_size(self, dataset):
        assert sample_batch(build_class_index(dataset), dataset, 0, 0, Rng(0)) == []

    def test_unknown_base_class(self, dataset):
        with pytest.raises(ArgumentError, match="no images"):
            sample_batch(build_class_index(dataset), dataset, 42, 4, Rng(0))

    def test_negative_size(self, dataset):
        with pytest.raises(ArgumentError, match="batch_size"):
            sample_batch(build_class_index(dataset), dataset, 0, -1, Rng(0))


class TestGroundTruthPairs:
    def test_no_shared_category(self):
        assert sample_gt_pairs((image("a", 1, 2), image("b", 3)), 6, Rng(0)) == []

    def test_fewer_than_requested(self):
        pairs = sample_gt_pairs((image("a", 1, 2, 1), image("b", 1, 3, 2)), 6, Rng(0))
        assert pairs == [(0, 0), (1, 2), (2, 0)]

    def test_draws_without_replacement(self):
        pair = (image("a", *[1] * 4), image("b", *[1] * 3))
        drawn = sample_gt_pairs(pair, 6, Rng(0))
        assert len(drawn) == 6
        assert len(set(drawn)) == 6
        assert drawn == sorted(drawn)
        assert all(0 <= ia < 4 and 0 <= ib < 3 for ia, ib in drawn)

    def test_deterministic(self):
        pair = (image("a", *[1] * 4), image("b", *[1] * 3))
        assert sample_gt_pairs(pair, 6, Rng(0)) == sample_gt_pairs(pair, 6, Rng(0))

    def test_p_must_be_positive(self):
        with pytest.raises(ArgumentError, match="at least 1"):
            sample_gt_pairs((image("a", 1), image("b", 1)), 0, Rng(0))


class TestPairSubset:
    def test_keeps_order(self):
        pairs = [(i, i + 1) for i in range(20)]
        subset = sample_pair_subset(pairs, 5, Rng(2))
        assert len(subset) == 5
        assert subset == sorted(subset)
        assert set(subset) <= set(pairs)

    def test_larger_than_list(self):
        assert sample_pair_subset([(0, 1)], 3, Rng(0)) == [(0, 1)]

    def test_negative(self):
        with pytest.raises(ArgumentError):
            sample_pair_subset([(0, 1)], -1, Rng(0))
