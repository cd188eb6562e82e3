"""Evaluation settings and results."""

from dataclasses import dataclass, replace
from enum import StrEnum

from codet.errors import ArgumentError


class ScoreForm(StrEnum):
    """How a cross-image detection pair is scored."""

    SIMILARITY = "eq2"  # s_a * s_b * cos
    COMBINED_SQRT = "combined_sqrt"  # s_a * s_b * sqrt(max(cos, 0))


class ApMode(StrEnum):
    CONTINUOUS = "continuous"
    ELEVEN_POINT = "eleven_point"


class MatchMode(StrEnum):
    """Which detector output is paired: embeddings or class probabilities."""

    SSCOD = "sscod"
    HARD_MATCH = "hard_match"
    SOFT_MATCH = "soft_match"


REPORT_IOU_THRESHOLDS = (0.5, 0.6, 0.7)


@dataclass(frozen=True)
class EvalConfig:
    top_k: int = 100
    iou_threshold: float = 0.5
    # pairs must score strictly above this; None keeps every pair
    similarity_threshold: float | None = None
    score_form: ScoreForm = ScoreForm.SIMILARITY
    # detections whose detection score is below this are ignored (sscod only)
    score_threshold: float = 0.0
    ap_mode: ApMode = ApMode.CONTINUOUS

    def __post_init__(self) -> None:
        if self.top_k < 1:
            raise ArgumentError(f"top_k must be at least 1, got {self.top_k}")
        if not 0.0 < self.iou_threshold < 1.0:
            raise ArgumentError(f"iou_threshold must be in (0, 1), got {self.iou_threshold}")
        if not 0.0 <= self.score_threshold <= 1.0:
            raise ArgumentError(f"score_threshold must be in [0, 1], got {self.score_threshold}")
        object.__setattr__(self, "score_form", ScoreForm(self.score_form))
        object.__setattr__(self, "ap_mode", ApMode(self.ap_mode))

    def at_iou(self, threshold: float) -> "EvalConfig":
        return replace(self, iou_threshold=threshold)


@dataclass(frozen=True)
class EvalResult:
    """Recall, precision and AP of a ranked list of predicted pairs."""

    recall: float
    precision: float
    average_precision: float
    tp_flags: tuple[bool, ...]
    n_gt_pairs: int

    @property
    def true_positives(self) -> int:
        return sum(self.tp_flags)

    @property
    def false_positives(self) -> int:
        return len(self.tp_flags) - self.true_positives
