"""Common-category image pairing and the base-class batch sampler.

Three algorithms: an offline list of every image pair sharing a category, a
per-category index of image ids, and a sampler that builds batches of image
pairs which all contain one base category in their first image.
"""

import logging
from typing import Sequence, TypeVar

from codet.errors import ArgumentError
from codet.numerics.rng import Rng
from codet.types.annotation import AnnotatedImage, ClassIndex, ImageId

logger = logging.getLogger(__name__)

T = TypeVar("T")

DEFAULT_RETRY_BUDGET = 100
DEFAULT_GT_PAIRS = 6

ImagePair = tuple[ImageId, ImageId]
BoxPair = tuple[int, int]


def _check_unique_ids(dataset: Sequence[AnnotatedImage]) -> None:
    seen: set[ImageId] = set()
    for image in dataset:
        if image.image_id in seen:
            raise ArgumentError(f"Duplicate image id {image.image_id!r}")
        seen.add(image.image_id)


def build_pair_list(dataset: Sequence[AnnotatedImage]) -> list[ImagePair]:
    """All pairs (i, j), i before j in dataset order, whose categories intersect."""
    _check_unique_ids(dataset)
    categories = [image.categories for image in dataset]
    pairs: list[ImagePair] = []
    for i, first in enumerate(dataset):
        for j in range(i + 1, len(dataset)):
            if categories[i] & categories[j]:
                pairs.append((first.image_id, dataset[j].image_id))
    logger.debug("pair list: %d pairs from %d images", len(pairs), len(dataset))
    return pairs


def build_class_index(dataset: Sequence[AnnotatedImage]) -> ClassIndex:
    """Map each category to the ids of the images containing it, in dataset order."""
    _check_unique_ids(dataset)
    index = ClassIndex()
    for image in dataset:
        for category in sorted(image.categories):
            index.images.setdefault(category, []).append(image.image_id)
    return index


def choose_base_class(index: ClassIndex) -> int:
    """The category with the most images; ties go to the lowest category id."""
    if len(index) == 0:
        raise ArgumentError("Cannot choose a base class from an empty index")
    return min(index.categories(), key=lambda c: (-len(index[c]), c))


def sample_batch(
    index: ClassIndex,
    dataset: Sequence[AnnotatedImage],
    base_class: int,
    batch_size: int,
    rng: Rng,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> list[ImagePair]:
    """
    Sample up to batch_size image pairs anchored on the base class.

    Each slot draws I1 from the base-class images, a category c of I1 other than
    the base class, and I2 from the images of c. A draw with no such c or with
    I2 == I1 is retried; a slot that exhausts retry_budget draws is skipped.

    Raises:
        ArgumentError: If the base class has no images or batch_size < 0
    """
    if base_class not in index:
        raise ArgumentError(f"Base class {base_class} has no images")
    if batch_size < 0:
        raise ArgumentError(f"batch_size must be non-negative, got {batch_size}")
    if retry_budget < 1:
        raise ArgumentError(f"retry_budget must be at least 1, got {retry_budget}")

    categories = {image.image_id: sorted(image.categories) for image in dataset}
    anchors = index[base_class]
    batch: list[ImagePair] = []
    skipped = 0
    for _ in range(batch_size):
        for _ in range(retry_budget):
            first = rng.choice(anchors)
            others = [c for c in categories.get(first, []) if c != base_class]
            if not others:
                continue
            second = rng.choice(index[rng.choice(others)])
            if second != first:
                batch.append((first, second))
                break
        else:
            skipped += 1

    if skipped:
        logger.debug("sample_batch: %d of %d slots skipped", skipped, batch_size)
    if batch_size and not batch:
        logger.warning(
            "sample_batch: no pair could be drawn for base class %d in %d attempts per slot",
            base_class,
            retry_budget,
        )
    return batch


def sample_gt_pairs(
    image_pair: tuple[AnnotatedImage, AnnotatedImage],
    p: int,
    rng: Rng,
) -> list[BoxPair]:
    """
    Draw p cross-image ground-truth box pairs of equal category.

    Valid pairs are enumerated with the first image's box index outer; p of them
    are drawn uniformly without replacement (all of them when there are fewer).
    The result is sorted by (index in A, index in B).
    """
    if p < 1:
        raise ArgumentError(f"p must be at least 1, got {p}")
    first, second = image_pair
    valid = [
        (ia, ib)
        for ia, a in enumerate(first.annotations)
        for ib, b in enumerate(second.annotations)
        if a.category == b.category
    ]
    if len(valid) <= p:
        return valid
    rng.shuffle(valid)
    return sorted(valid[:p])


def sample_pair_subset(pairs: Sequence[T], k: int, rng: Rng) -> list[T]:
    """Draw k items without replacement, kept in their original order."""
    if k < 0:
        raise ArgumentError(f"k must be non-negative, got {k}")
    if k >= len(pairs):
        return list(pairs)
    positions = list(range(len(pairs)))
    rng.shuffle(positions)
    return [pairs[i] for i in sorted(positions[:k])]
