"""Common-object-pair evaluation."""

from codet.evaluation.config import (
    REPORT_IOU_THRESHOLDS,
    ApMode,
    EvalConfig,
    EvalResult,
    MatchMode,
    ScoreForm,
)
from codet.evaluation.matching import enumerate_top_pairs, hard_match, rank_pairs, soft_match
from codet.evaluation.protocol import (
    EvalReport,
    ImagePairCase,
    all_gt_pairs,
    average_precision,
    classify_pairs,
    evaluate_dataset,
    evaluate_image_pair,
    match_box,
    predict_pairs,
    recall_precision,
    summarize,
)

__all__ = [
    "REPORT_IOU_THRESHOLDS",
    "ApMode",
    "EvalConfig",
    "EvalReport",
    "EvalResult",
    "ImagePairCase",
    "MatchMode",
    "ScoreForm",
    "all_gt_pairs",
    "average_precision",
    "classify_pairs",
    "enumerate_top_pairs",
    "evaluate_dataset",
    "evaluate_image_pair",
    "hard_match",
    "match_box",
    "predict_pairs",
    "rank_pairs",
    "recall_precision",
    "soft_match",
    "summarize",
]
