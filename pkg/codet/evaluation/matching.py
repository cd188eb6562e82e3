"""Cross-image pair enumeration for the embedding detector and the two
class-probability baselines. Every function returns pairs ranked by
descending score, ties broken by (index_a, index_b), truncated to top_k."""

from typing import Iterable, Sequence

import numpy as np

from codet.detection.scoring import combined_score, cosine, detection_score, pair_similarity
from codet.errors import ArgumentError, ShapeError
from codet.evaluation.config import EvalConfig, ScoreForm
from codet.types.detection import ClassProbBox, Detection, ScoredPair


def rank_pairs(pairs: Iterable[ScoredPair], cfg: EvalConfig) -> list[ScoredPair]:
    """Apply the similarity threshold, sort by (-score, index_a, index_b), keep top_k."""
    if cfg.similarity_threshold is not None:
        threshold = cfg.similarity_threshold
        pairs = (p for p in pairs if p.score > threshold)
    ranked = sorted(pairs, key=lambda p: (-p.score, p.index_a, p.index_b))
    return ranked[: cfg.top_k]


def _pair_score(a: Detection, b: Detection, form: ScoreForm) -> float:
    if form == ScoreForm.SIMILARITY:
        return pair_similarity(a, b)
    return combined_score(detection_score(a), detection_score(b), cosine(a.embedding, b.embedding))


def enumerate_top_pairs(
    dets_a: Sequence[Detection], dets_b: Sequence[Detection], cfg: EvalConfig
) -> list[ScoredPair]:
    """Score every cross pair of detections and return the top_k."""
    keep_a = [i for i, d in enumerate(dets_a) if detection_score(d) >= cfg.score_threshold]
    keep_b = [j for j, d in enumerate(dets_b) if detection_score(d) >= cfg.score_threshold]
    scored = (
        ScoredPair(i, j, _pair_score(dets_a[i], dets_b[j], cfg.score_form))
        for i in keep_a
        for j in keep_b
    )
    return rank_pairs(scored, cfg)


def _probs(boxes: Sequence[ClassProbBox]) -> np.ndarray:
    return np.array([b.probs for b in boxes], dtype=np.float64)


def _check_categories(
    dets_a: Sequence[ClassProbBox], dets_b: Sequence[ClassProbBox]
) -> tuple[np.ndarray, np.ndarray]:
    sizes = {len(d.probs) for d in [*dets_a, *dets_b]}
    if len(sizes) > 1:
        raise ShapeError(f"Probability vectors disagree on the category count: {sorted(sizes)}")
    return _probs(dets_a), _probs(dets_b)


def hard_match(
    dets_a: Sequence[ClassProbBox], dets_b: Sequence[ClassProbBox], cfg: EvalConfig
) -> list[ScoredPair]:
    """Pair boxes whose argmax categories agree, scored by the product of the maxima."""
    if not dets_a or not dets_b:
        return []
    probs_a, probs_b = _check_categories(dets_a, dets_b)
    # np.argmax returns the first maximum, i.e. the lowest category index
    top_a, top_b = np.argmax(probs_a, axis=1), np.argmax(probs_b, axis=1)
    max_a, max_b = np.max(probs_a, axis=1), np.max(probs_b, axis=1)
    scored = (
        ScoredPair(i, j, float(max_a[i] * max_b[j]))
        for i in range(len(dets_a))
        for j in range(len(dets_b))
        if top_a[i] == top_b[j]
    )
    return rank_pairs(scored, cfg)


def soft_match(
    dets_a: Sequence[ClassProbBox], dets_b: Sequence[ClassProbBox], cfg: EvalConfig
) -> list[ScoredPair]:
    """Pair every two boxes, scored by the cosine of their probability vectors."""
    if not dets_a or not dets_b:
        return []
    probs_a, probs_b = _check_categories(dets_a, dets_b)
    norms_a = np.linalg.norm(probs_a, axis=1)
    norms_b = np.linalg.norm(probs_b, axis=1)
    if np.any(norms_a == 0.0) or np.any(norms_b == 0.0):
        raise ArgumentError("soft_match needs non-zero probability vectors")
    cos = np.clip((probs_a / norms_a[:, None]) @ (probs_b / norms_b[:, None]).T, -1.0, 1.0)
    scored = (
        ScoredPair(i, j, float(cos[i, j]))
        for i in range(len(dets_a))
        for j in range(len(dets_b))
    )
    return rank_pairs(scored, cfg)
