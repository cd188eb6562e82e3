"""
True-positive classification of predicted pairs and the recall, precision and
AP computed from it, for one image pair or a whole dataset of image pairs.

A predicted pair is a true positive when each of its boxes overlaps a
ground-truth box of its own image above the IoU threshold, the two matched
ground-truth boxes share a category, and that ground-truth pair has not been
claimed by a higher-scoring prediction.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from codet.errors import ArgumentError, DegenerateBoxError
from codet.evaluation.config import (
    REPORT_IOU_THRESHOLDS,
    ApMode,
    EvalConfig,
    EvalResult,
    MatchMode,
)
from codet.evaluation.matching import enumerate_top_pairs, hard_match, soft_match
from codet.geometry.boxes import iou
from codet.types.annotation import ImageId
from codet.types.box import BBox
from codet.types.detection import ClassProbBox, Detection, GroundTruthBox, HasBox, ScoredPair

logger = logging.getLogger(__name__)

GtPair = tuple[int, int]


def match_box(box: BBox, gts: Sequence[GroundTruthBox], threshold: float) -> int | None:
    """Index of the ground-truth box with the highest IoU strictly above threshold.

    Ties go to the lowest index. A doubly degenerate overlap counts as IoU 0.
    """
    best: int | None = None
    best_iou = threshold
    for k, gt in enumerate(gts):
        try:
            overlap = iou(box, gt.box)
        except DegenerateBoxError:
            overlap = 0.0
        if overlap > best_iou:
            best, best_iou = k, overlap
    return best


def all_gt_pairs(
    gts_a: Sequence[GroundTruthBox], gts_b: Sequence[GroundTruthBox]
) -> list[GtPair]:
    """Every cross-image ground-truth pair of equal category."""
    return [
        (ia, ib)
        for ia, a in enumerate(gts_a)
        for ib, b in enumerate(gts_b)
        if a.category == b.category
    ]


def classify_pairs(
    pairs: Sequence[ScoredPair],
    dets_a: Sequence[HasBox],
    dets_b: Sequence[HasBox],
    gts_a: Sequence[GroundTruthBox],
    gts_b: Sequence[GroundTruthBox],
    cfg: EvalConfig,
    gt_pairs: Sequence[GtPair] | None = None,
) -> tuple[bool, ...]:
    """
    Flag each predicted pair, in the given order, as true or false positive.

    Args:
        pairs: Predicted pairs sorted by descending score
        dets_a, dets_b: Boxes the pair indices refer to
        gts_a, gts_b: Ground truth of the two images
        cfg: Supplies the IoU threshold
        gt_pairs: The ground-truth pairs that can be recalled; every equal-category
            pair when None

    Returns:
        One flag per pair
    """
    universe = set(all_gt_pairs(gts_a, gts_b) if gt_pairs is None else gt_pairs)
    match_a = [match_box(d.box, gts_a, cfg.iou_threshold) for d in dets_a]
    match_b = [match_box(d.box, gts_b, cfg.iou_threshold) for d in dets_b]
    consumed: set[GtPair] = set()
    flags = []
    for pair in pairs:
        ga, gb = match_a[pair.index_a], match_b[pair.index_b]
        if ga is None or gb is None:
            flags.append(False)
            continue
        key = (ga, gb)
        hit = (
            gts_a[ga].category == gts_b[gb].category
            and key in universe
            and key not in consumed
        )
        if hit:
            consumed.add(key)
        flags.append(hit)
    return tuple(flags)


def recall_precision(tp_flags: Sequence[bool], n_gt_pairs: int) -> tuple[float, float]:
    """(TP / n_gt_pairs, TP / predictions); each 0 when its denominator is 0."""
    if n_gt_pairs < 0:
        raise ArgumentError(f"n_gt_pairs must be non-negative, got {n_gt_pairs}")
    tp = sum(1 for f in tp_flags if f)
    if tp > n_gt_pairs:
        raise ArgumentError(f"{tp} true positives exceed {n_gt_pairs} ground-truth pairs")
    recall = tp / n_gt_pairs if n_gt_pairs else 0.0
    precision = tp / len(tp_flags) if tp_flags else 0.0
    return recall, precision


def _voc_ap(rec: np.ndarray, prec: np.ndarray, mode: ApMode) -> float:
    if mode == ApMode.ELEVEN_POINT:
        ap = 0.0
        for t in np.arange(11) / 10.0:
            reached = rec >= t
            ap += (float(np.max(prec[reached])) if np.any(reached) else 0.0) / 11.0
        return ap

    # sentinels, then the monotone precision envelope
    mrec = np.concatenate(([0.0], rec, [1.0]))
    mpre = np.concatenate(([0.0], prec, [0.0]))
    for i in range(mpre.size - 1, 0, -1):
        mpre[i - 1] = max(mpre[i - 1], mpre[i])
    # sum delta-recall * precision where recall changes
    i = np.flatnonzero(mrec[1:] != mrec[:-1])
    return float(np.sum((mrec[i + 1] - mrec[i]) * mpre[i + 1]))


def average_precision(
    tp_flags: Sequence[bool], n_gt_pairs: int, mode: ApMode = ApMode.CONTINUOUS
) -> float:
    """Area under the precision-recall curve of the ranked flags."""
    if n_gt_pairs <= 0 or not tp_flags:
        return 0.0
    hits = np.asarray(tp_flags, dtype=bool)
    tp = np.cumsum(hits)
    fp = np.cumsum(~hits)
    rec = tp / float(n_gt_pairs)
    prec = tp / (tp + fp)
    return _voc_ap(rec, prec, ApMode(mode))


def summarize(tp_flags: Sequence[bool], n_gt_pairs: int, cfg: EvalConfig) -> EvalResult:
    recall, precision = recall_precision(tp_flags, n_gt_pairs)
    return EvalResult(
        recall=recall,
        precision=precision,
        average_precision=average_precision(tp_flags, n_gt_pairs, cfg.ap_mode),
        tp_flags=tuple(tp_flags),
        n_gt_pairs=n_gt_pairs,
    )


@dataclass(frozen=True)
class ImagePairCase:
    """Detections and ground truth of one image pair."""

    image_a: ImageId
    image_b: ImageId
    dets_a: Sequence[Detection] | Sequence[ClassProbBox]
    dets_b: Sequence[Detection] | Sequence[ClassProbBox]
    gts_a: Sequence[GroundTruthBox]
    gts_b: Sequence[GroundTruthBox]
    # recallable ground-truth pairs; every equal-category pair when None
    gt_pairs: Sequence[GtPair] | None = None

    def universe_size(self) -> int:
        if self.gt_pairs is None:
            return len(all_gt_pairs(self.gts_a, self.gts_b))
        return len(self.gt_pairs)


def predict_pairs(case: ImagePairCase, mode: MatchMode, cfg: EvalConfig) -> list[ScoredPair]:
    """Rank the cross pairs of a case with the detector or baseline of `mode`."""
    mode = MatchMode(mode)
    if mode == MatchMode.SSCOD:
        if not all(isinstance(d, Detection) for d in [*case.dets_a, *case.dets_b]):
            raise ArgumentError("sscod mode needs detections with embeddings")
        return enumerate_top_pairs(case.dets_a, case.dets_b, cfg)  # type: ignore[arg-type]
    if not all(isinstance(d, ClassProbBox) for d in [*case.dets_a, *case.dets_b]):
        raise ArgumentError(f"{mode} mode needs boxes with class probabilities")
    match = hard_match if mode == MatchMode.HARD_MATCH else soft_match
    return match(case.dets_a, case.dets_b, cfg)  # type: ignore[arg-type]


def evaluate_image_pair(
    case: ImagePairCase, mode: MatchMode, cfg: EvalConfig
) -> tuple[list[ScoredPair], EvalResult]:
    """Predict, classify and summarize one image pair at cfg.iou_threshold."""
    pairs = predict_pairs(case, mode, cfg)
    flags = classify_pairs(
        pairs, case.dets_a, case.dets_b, case.gts_a, case.gts_b, cfg, case.gt_pairs
    )
    return pairs, summarize(flags, case.universe_size(), cfg)


@dataclass
class EvalReport:
    """Dataset-level results per IoU threshold."""

    mode: MatchMode
    image_pairs: int
    n_gt_pairs: int
    results: dict[float, EvalResult] = field(default_factory=dict)


def _classify_case(
    case: ImagePairCase, mode: MatchMode, cfg: EvalConfig, thresholds: Sequence[float]
) -> tuple[list[float], dict[float, tuple[bool, ...]]]:
    pairs = predict_pairs(case, mode, cfg)
    flags = {
        threshold: classify_pairs(
            pairs, case.dets_a, case.dets_b, case.gts_a, case.gts_b, cfg.at_iou(threshold),
            case.gt_pairs,
        )
        for threshold in thresholds
    }
    return [p.score for p in pairs], flags


def evaluate_dataset(
    cases: Sequence[ImagePairCase],
    mode: MatchMode,
    cfg: EvalConfig,
    thresholds: Sequence[float] = REPORT_IOU_THRESHOLDS,
    jobs: int = 1,
) -> EvalReport:
    """
    Evaluate many image pairs and pool their predictions.

    Each case is ranked and classified independently (on `jobs` worker threads
    when jobs > 1). The per-case predictions are then merged in input order and
    sorted by descending score, with the sort stable so that ties keep input
    order; recall, precision and AP are computed over the merged ranking
    against the summed ground-truth pair counts.
    """
    if jobs < 1:
        raise ArgumentError(f"jobs must be at least 1, got {jobs}")
    for threshold in thresholds:
        cfg.at_iou(threshold)  # rejects thresholds outside (0, 1)

    def work(case: ImagePairCase) -> tuple[list[float], dict[float, tuple[bool, ...]]]:
        return _classify_case(case, mode, cfg, thresholds)

    if jobs == 1:
        outcomes = [work(case) for case in cases]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(work, cases))

    scores = np.array([s for case_scores, _ in outcomes for s in case_scores], dtype=np.float64)
    order = np.argsort(-scores, kind="stable")
    n_gt = sum(case.universe_size() for case in cases)
    report = EvalReport(mode=MatchMode(mode), image_pairs=len(cases), n_gt_pairs=n_gt)
    for threshold in thresholds:
        merged = np.array([f for _, flags in outcomes for f in flags[threshold]], dtype=bool)
        report.results[threshold] = summarize(
            [bool(f) for f in merged[order]], n_gt, cfg.at_iou(threshold)
        )
    logger.debug("evaluated %d image pairs, %d ground-truth pairs", len(cases), n_gt)
    return report
