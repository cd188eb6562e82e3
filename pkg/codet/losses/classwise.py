"""Class-wise softmax losses over normalized class centers.

Covers the plain normalized softmax, the ArcFace and curriculum modulations,
and the focal curriculum loss. Points and weight columns are normalized inside
the computation, and gradients flow through that normalization back to the raw
parameters. The curriculum parameter t and the focal exponent are constants
within one evaluation.
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

from codet.errors import ArgumentError, ShapeError
from codet.losses.common import (
    Modulation,
    canonical_order,
    cosine_matrix,
    normalize_backward,
    normalize_rows,
    unsort_rows,
)
from codet.losses.curriculum import CurriculumState, focal_gamma
from codet.losses.modulation import (
    NegativeKind,
    classify_negative,
    curriculum_negative,
    margin_positive,
)
from codet.numerics.stable import log_sum_exp_rows, softmax_rows
from codet.types.batch import ClassWeights, EmbeddingBatch, LossValueGrad


@dataclass(frozen=True)
class ClasswiseParams:
    """Scale s and additive angular margin m (radians)."""

    scale: float = 4.0
    margin: float = 0.5

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ArgumentError(f"scale must be positive, got {self.scale}")
        if self.margin < 0:
            raise ArgumentError(f"margin must be non-negative, got {self.margin}")


def _validate(
    batch: EmbeddingBatch,
    weights: ClassWeights,
    modulation: Modulation,
    state: CurriculumState | None,
) -> None:
    if weights.dim != batch.dim:
        raise ShapeError(f"weights have dimension {weights.dim}, points have {batch.dim}")
    if int(batch.labels.max()) >= weights.n_classes:
        raise ArgumentError(
            f"label {int(batch.labels.max())} out of range for {weights.n_classes} classes"
        )
    if modulation == Modulation.CURRICULUM and state is None:
        raise ArgumentError("curriculum modulation requires a CurriculumState")


def _softmax_family(
    batch: EmbeddingBatch,
    weights: ClassWeights,
    params: ClasswiseParams,
    modulation: Modulation,
    state: CurriculumState | None,
    focal: bool,
) -> LossValueGrad:
    _validate(batch, weights, modulation, state)
    order = canonical_order(batch)
    sorted_batch = batch.take(order)

    units, point_norms = normalize_rows(sorted_batch.points)
    centers, center_norms = normalize_rows(weights.columns.T)
    cos = cosine_matrix(units, centers)

    count = cos.shape[0]
    rows = np.arange(count)
    labels = sorted_batch.labels
    cos_pos = cos[rows, labels]
    s = params.scale

    logits = s * cos
    slopes = np.full_like(cos, s)

    if modulation != Modulation.NONE:
        t_value, t_slope = margin_positive(cos_pos, params.margin)
        if modulation == Modulation.CURRICULUM:
            assert state is not None
            theta_pos = np.arccos(cos_pos)[:, None]
            n_value, n_slope = curriculum_negative(cos, theta_pos, params.margin, state.t)
            logits = s * n_value
            slopes = s * n_slope
        logits[rows, labels] = s * t_value
        slopes[rows, labels] = s * t_slope

    # nll_i = -log p_i
    nll = log_sum_exp_rows(logits) - logits[rows, labels]
    dnll = softmax_rows(logits)
    dnll[rows, labels] -= 1.0

    if focal:
        assert state is not None
        gamma = focal_gamma(state.t)
        one_minus_p = -np.expm1(-nll)
        factor = one_minus_p**gamma
        per_sample = factor * nll
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            extra = np.where(
                one_minus_p > 0.0,
                gamma * nll * np.exp(-nll) * one_minus_p ** (gamma - 1.0),
                0.0,
            )
        weight = factor + extra if gamma != 0.0 else np.ones_like(nll)
    else:
        per_sample = nll
        weight = np.ones_like(nll)

    value = float(np.mean(per_sample))
    grad_cos = (weight / count)[:, None] * dnll * slopes
    grad_units = grad_cos @ centers
    grad_centers = grad_cos.T @ units

    grad_points = unsort_rows(normalize_backward(grad_units, units, point_norms), order)
    grad_weights = normalize_backward(grad_centers, centers, center_norms).T
    return LossValueGrad(
        value=value,
        grad_points=grad_points,
        grad_weights=grad_weights,
        positive_cosines=unsort_rows(cos_pos, order),
    )


def classwise_loss(
    batch: EmbeddingBatch,
    weights: ClassWeights,
    params: ClasswiseParams = ClasswiseParams(),
    modulation: Modulation = Modulation.NONE,
    state: CurriculumState | None = None,
) -> LossValueGrad:
    """Mean modulated softmax loss over the batch."""
    return _softmax_family(batch, weights, params, Modulation(modulation), state, focal=False)


def focal_curriculum_loss(
    batch: EmbeddingBatch,
    weights: ClassWeights,
    params: ClasswiseParams,
    state: CurriculumState,
) -> LossValueGrad:
    """Mean of -(1 - p_i)^gamma(t) log p_i with curriculum-modulated p_i."""
    return _softmax_family(batch, weights, params, Modulation.CURRICULUM, state, focal=True)


def negative_breakdown(
    batch: EmbeddingBatch, weights: ClassWeights, margin: float
) -> Counter[NegativeKind]:
    """Count hard, semi-hard and easy (sample, other class) pairs."""
    units, _ = normalize_rows(batch.points)
    centers, _ = normalize_rows(weights.columns.T)
    angles = np.arccos(cosine_matrix(units, centers))
    counts: Counter[NegativeKind] = Counter({kind: 0 for kind in NegativeKind})
    for i, label in enumerate(batch.labels):
        theta_pos = float(angles[i, label])
        for j in range(weights.n_classes):
            if j != label:
                counts[classify_negative(theta_pos, float(angles[i, j]), margin)] += 1
    return counts
