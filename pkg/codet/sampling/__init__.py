"""Image-pair and ground-truth pair sampling."""

from codet.sampling.pairs import (
    DEFAULT_GT_PAIRS,
    DEFAULT_RETRY_BUDGET,
    build_class_index,
    build_pair_list,
    choose_base_class,
    sample_batch,
    sample_gt_pairs,
    sample_pair_subset,
)

__all__ = [
    "DEFAULT_GT_PAIRS",
    "DEFAULT_RETRY_BUDGET",
    "build_class_index",
    "build_pair_list",
    "choose_base_class",
    "sample_batch",
    "sample_gt_pairs",
    "sample_pair_subset",
]
