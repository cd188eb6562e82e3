"""Detection scoring and pair similarity."""

from codet.detection.scoring import combined_score, cosine, detection_score, pair_similarity

__all__ = ["combined_score", "cosine", "detection_score", "pair_similarity"]
