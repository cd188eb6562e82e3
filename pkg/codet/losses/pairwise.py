"""Pair-wise losses over positive/negative pair sets within a batch.

Triplet (batch-hard), multi-class N-pair, supervised contrastive, and the
modulated contrastive family (ArcCon, ArcCon-Neg, CurCon). All losses work on
the cosine matrix of the normalized points, so a rigid rotation of the batch
leaves their values unchanged.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from codet.errors import ArgumentError, NoValidAnchorsError
from codet.losses.common import (
    DenominatorMode,
    Distance,
    Modulation,
    canonical_order,
    cosine_matrix,
    distance_from_cosine,
    normalize_backward,
    normalize_rows,
    unsort_rows,
)
from codet.losses.curriculum import CurriculumState
from codet.losses.modulation import (
    NegativeKind,
    curriculum_negative,
    margin_positive,
)
from codet.numerics.stable import log_sum_exp, log_sum_exp_rows, softmax_rows
from codet.types.batch import EmbeddingBatch, LossValueGrad, PairSets


@dataclass(frozen=True)
class PairwiseParams:
    """Scale s = 1/tau, margin m, denominator scope and modulation."""

    scale: float = 1.0
    margin: float = 0.5
    denominator_mode: DenominatorMode = DenominatorMode.ALL_OTHERS
    modulation: Modulation = Modulation.ARCFACE

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ArgumentError(f"scale must be positive, got {self.scale}")
        if self.margin < 0:
            raise ArgumentError(f"margin must be non-negative, got {self.margin}")
        object.__setattr__(self, "denominator_mode", DenominatorMode(self.denominator_mode))
        object.__setattr__(self, "modulation", Modulation(self.modulation))


def build_pair_sets(labels: Sequence[int] | np.ndarray) -> PairSets:
    """U_i = same label (j != i), V_i = different label."""
    array = np.asarray(labels).reshape(-1)
    if array.size < 2:
        raise ArgumentError(f"Pair sets need at least 2 samples, got {array.size}")
    indices = np.arange(array.size)
    positives = []
    negatives = []
    for i, label in enumerate(array):
        same = array == label
        positives.append(indices[same & (indices != i)])
        negatives.append(indices[~same])
    return PairSets(tuple(positives), tuple(negatives))


class _PairContext:
    """The canonically ordered batch with its unit points and cosine matrix."""

    def __init__(self, batch: EmbeddingBatch):
        self.order = canonical_order(batch)
        self.batch = batch.take(self.order)
        self.units, self.norms = normalize_rows(self.batch.points)
        self.cos = cosine_matrix(self.units, self.units)
        self.pairs = build_pair_sets(self.batch.labels)
        self.grad_cos = np.zeros_like(self.cos)

    @property
    def size(self) -> int:
        return self.batch.size

    def result(self, value: float) -> LossValueGrad:
        g = self.grad_cos
        grad_units = (g + g.T) @ self.units
        grad = normalize_backward(grad_units, self.units, self.norms)
        return LossValueGrad(value=value, grad_points=unsort_rows(grad, self.order))


def triplet_loss(
    batch: EmbeddingBatch,
    margin: float,
    distance: Distance = Distance.COSINE,
) -> LossValueGrad:
    """Batch-hard triplet hinge, averaged over anchors with both pair kinds."""
    ctx = _PairContext(batch)
    dist, slope = distance_from_cosine(ctx.cos, Distance(distance))
    total = 0.0
    used = 0
    for i in range(ctx.size):
        pos = ctx.pairs.positives[i]
        neg = ctx.pairs.negatives[i]
        if pos.size == 0 or neg.size == 0:
            continue
        used += 1
        hardest_pos = pos[int(np.argmax(dist[i, pos]))]
        hardest_neg = neg[int(np.argmin(dist[i, neg]))]
        hinge = margin + dist[i, hardest_pos] - dist[i, hardest_neg]
        if hinge > 0.0:
            total += hinge
            ctx.grad_cos[i, hardest_pos] += slope
            ctx.grad_cos[i, hardest_neg] -= slope
    if used == 0:
        raise NoValidAnchorsError("triplet")
    ctx.grad_cos /= used
    return ctx.result(total / used)


def npair_loss(
    batch: EmbeddingBatch,
    distance: Distance = Distance.COSINE,
    scale: float = 1.0,
) -> LossValueGrad:
    """log(1 + sum_k exp(s (d_i^+ - d_ik^-))) averaged over anchors.

    Every anchor must have exactly one positive and at least one negative.
    """
    ctx = _PairContext(batch)
    dist, slope = distance_from_cosine(ctx.cos, Distance(distance))
    total = 0.0
    for i in range(ctx.size):
        pos = ctx.pairs.positives[i]
        neg = ctx.pairs.negatives[i]
        if pos.size != 1:
            raise ArgumentError(f"N-pair loss needs exactly one positive per anchor; "
                                f"anchor {int(ctx.order[i])} has {pos.size}")
        if neg.size == 0:
            raise ArgumentError(f"N-pair loss: anchor {int(ctx.order[i])} has no negatives")
        j = int(pos[0])
        terms = np.concatenate(([0.0], scale * (dist[i, j] - dist[i, neg])))
        total += log_sum_exp(terms)
        weights = softmax_rows(terms)[1:]
        ctx.grad_cos[i, j] += scale * float(np.sum(weights)) * slope
        ctx.grad_cos[i, neg] -= scale * weights * slope
    ctx.grad_cos /= ctx.size
    return ctx.result(total / ctx.size)


def supcon_loss(batch: EmbeddingBatch, scale: float) -> LossValueGrad:
    """Supervised contrastive loss in cosine form; the denominator runs over k != i."""
    ctx = _PairContext(batch)
    total = 0.0
    used = 0
    for i in range(ctx.size):
        pos = ctx.pairs.positives[i]
        if pos.size == 0:
            continue
        used += 1
        others = np.flatnonzero(np.arange(ctx.size) != i)
        row = scale * ctx.cos[i, others]
        lse = log_sum_exp(row)
        total += float(np.mean(lse - scale * ctx.cos[i, pos]))
        ctx.grad_cos[i, others] += scale * softmax_rows(row)
        ctx.grad_cos[i, pos] -= scale / pos.size
    if used == 0:
        raise NoValidAnchorsError("supcon")
    ctx.grad_cos /= used
    return ctx.result(total / used)


def mod_supcon_loss(
    batch: EmbeddingBatch,
    params: PairwiseParams,
    state: CurriculumState | None = None,
) -> LossValueGrad:
    """
    Modulated contrastive loss.

    For anchor i and positive j the numerator logit is s T(theta_ij). With
    denominator_mode negatives_only the denominator adds s N(theta_ik) over
    k in V_i; with all_others it also adds the remaining positives of i with
    their plain cosine, so that zero margin reproduces supcon_loss exactly.
    """
    if params.modulation == Modulation.CURRICULUM and state is None:
        raise ArgumentError("curriculum modulation requires a CurriculumState")
    ctx = _PairContext(batch)
    s = params.scale
    m = params.margin
    total = 0.0
    used = 0
    for i in range(ctx.size):
        pos = ctx.pairs.positives[i]
        neg = ctx.pairs.negatives[i]
        if pos.size == 0:
            continue
        used += 1
        cos_row = ctx.cos[i]
        rows = np.arange(pos.size)

        logits = np.full((pos.size, ctx.size), -np.inf)
        slopes = np.zeros((pos.size, ctx.size))
        if params.denominator_mode == DenominatorMode.ALL_OTHERS:
            logits[:, pos] = s * cos_row[pos]
            slopes[:, pos] = s
        if params.modulation == Modulation.CURRICULUM:
            assert state is not None
            theta_pos = np.arccos(cos_row[pos])[:, None]
            n_value, n_slope = curriculum_negative(cos_row[neg][None, :], theta_pos, m, state.t)
            logits[:, neg] = s * n_value
            slopes[:, neg] = s * n_slope
        else:
            logits[:, neg] = s * cos_row[neg]
            slopes[:, neg] = s

        if params.modulation == Modulation.NONE:
            t_value, t_slope = cos_row[pos], np.ones(pos.size)
        else:
            t_value, t_slope = margin_positive(cos_row[pos], m)
        logits[rows, pos] = s * t_value
        slopes[rows, pos] = s * t_slope

        terms = log_sum_exp_rows(logits) - logits[rows, pos]
        total += float(np.mean(terms))
        dlogits = softmax_rows(logits)
        dlogits[rows, pos] -= 1.0
        ctx.grad_cos[i] += np.sum(dlogits * slopes, axis=0) / pos.size
    if used == 0:
        raise NoValidAnchorsError("mod_supcon")
    ctx.grad_cos /= used
    return ctx.result(total / used)


def curcon_update_t(
    batch: EmbeddingBatch, pair_sets: PairSets, state: CurriculumState
) -> CurriculumState:
    """Advance t with the mean over anchors of their minimum positive cosine."""
    units, _ = normalize_rows(batch.points)
    cos = cosine_matrix(units, units)
    minima = [
        float(np.min(cos[i, pos])) for i, pos in enumerate(pair_sets.positives) if pos.size
    ]
    if not minima:
        raise ArgumentError("curcon_update_t: no anchor has a positive")
    return state.advanced(float(np.mean(minima)))


def pair_negative_breakdown(batch: EmbeddingBatch, margin: float) -> Counter[NegativeKind]:
    """Count hard, semi-hard and easy (anchor, positive, negative) triples."""
    units, _ = normalize_rows(batch.points)
    angles = np.arccos(cosine_matrix(units, units))
    pairs = build_pair_sets(batch.labels)
    counts: Counter[NegativeKind] = Counter({kind: 0 for kind in NegativeKind})
    for i in range(batch.size):
        theta_pos = angles[i, pairs.positives[i]][:, None]
        theta_neg = angles[i, pairs.negatives[i]][None, :]
        # same comparisons as classify_negative, over every (positive, negative)
        hard = theta_neg < theta_pos
        semi_hard = ~hard & (theta_neg < theta_pos + margin)
        counts[NegativeKind.HARD] += int(np.sum(hard))
        counts[NegativeKind.SEMI_HARD] += int(np.sum(semi_hard))
        counts[NegativeKind.EASY] += int(hard.size - np.sum(hard) - np.sum(semi_hard))
    return counts
