"""Gradient-check suite over the registered losses.

Each loss is evaluated on seeded random instances and its analytic gradients
are compared against central finite differences, for the points and (for
class-wise losses) the class weights.
"""

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from codet.errors import ArgumentError
from codet.losses.base import LabelLayout, LossDefinition, LossSettings
from codet.losses.curriculum import CurriculumState
from codet.losses.registry import get_loss, list_losses
from codet.numerics.gradcheck import (
    DEFAULT_REL_TOL,
    DEFAULT_STEP,
    GradientReport,
    check_gradient,
    finite_difference_gradient,
)
from codet.numerics.rng import Rng
from codet.types.batch import ClassWeights, EmbeddingBatch

logger = logging.getLogger(__name__)

# finite-difference noise floor for coordinates whose true gradient is ~0
DEFAULT_ABS_TOL = 1e-8
# minimum distance (radians or distance units) to a branch switch of the loss
KINK_CLEARANCE = 1e-3
MAX_REDRAWS = 100
T_RANGE = (0.05, 0.95)


@dataclass(frozen=True)
class LossInstance:
    """One random input for a loss."""

    batch: EmbeddingBatch
    weights: ClassWeights | None
    state: CurriculumState | None
    settings: LossSettings


@dataclass(frozen=True)
class LossCheck:
    """Aggregated gradient-check outcome of one loss over all its instances."""

    loss: str
    instances: int
    failures: int
    max_rel_error: float
    max_abs_error: float

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _labels(layout: LabelLayout, size: int, n_classes: int, rng: Rng) -> list[int]:
    if layout == LabelLayout.PAIRS:
        if size % 2:
            raise ArgumentError(f"A paired batch needs an even size, got {size}")
        labels = [i // 2 for i in range(size)]
    elif layout == LabelLayout.GROUPED:
        if size < 2 * n_classes:
            raise ArgumentError(f"{size} samples cannot give {n_classes} classes two each")
        labels = [i % n_classes for i in range(size)]
    else:
        labels = [rng.below(n_classes) for _ in range(size)]
    rng.shuffle(labels)
    return labels


def _gaussian(rng: Rng, shape: tuple[int, int]) -> np.ndarray:
    return np.array([[rng.gauss() for _ in range(shape[1])] for _ in range(shape[0])])


def make_instance(
    definition: LossDefinition,
    rng: Rng,
    size: int = 16,
    dim: int = 8,
    n_classes: int = 4,
) -> LossInstance:
    """
    Draw a well-conditioned random instance for a loss.

    Instances whose inputs lie within KINK_CLEARANCE of a non-smooth point of
    the loss are redrawn, up to MAX_REDRAWS times.
    """
    settings = definition.settings()
    for _ in range(MAX_REDRAWS):
        labels = _labels(definition.layout, size, n_classes, rng)
        batch = EmbeddingBatch(_gaussian(rng, (size, dim)), labels)
        weights: ClassWeights | None = None
        if definition.needs_weights:
            weights = ClassWeights(_gaussian(rng, (dim, n_classes)))
        state: CurriculumState | None = None
        if definition.uses_curriculum:
            low, high = T_RANGE
            state = CurriculumState(t=low + (high - low) * rng.uniform())
        if definition.kink_distance is None:
            return LossInstance(batch, weights, state, settings)
        if definition.kink_distance(batch, weights, settings) >= KINK_CLEARANCE:
            return LossInstance(batch, weights, state, settings)
    raise ArgumentError(
        f"{definition.identifier}: no instance clear of branch switches in {MAX_REDRAWS} draws"
    )


def check_instance(
    definition: LossDefinition,
    instance: LossInstance,
    h: float = DEFAULT_STEP,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    corrupt: float = 0.0,
) -> list[GradientReport]:
    """Check the point gradient, and the weight gradient when the loss has weights.

    A non-zero corrupt scales the analytic gradients by (1 + corrupt); it exists
    to exercise the failure path.
    """
    batch, weights, state, settings = (
        instance.batch,
        instance.weights,
        instance.state,
        instance.settings,
    )
    result = definition.evaluate(batch, weights, state, settings)

    def of_points(points: np.ndarray) -> float:
        return definition.evaluate(batch.with_points(points), weights, state, settings).value

    reports = [
        check_gradient(
            result.grad_points * (1.0 + corrupt),
            finite_difference_gradient(of_points, batch.points, h),
            rel_tol,
            abs_tol,
        )
    ]
    if weights is not None and result.grad_weights is not None:

        def of_weights(columns: np.ndarray) -> float:
            return definition.evaluate(batch, ClassWeights(columns), state, settings).value

        reports.append(
            check_gradient(
                result.grad_weights * (1.0 + corrupt),
                finite_difference_gradient(of_weights, weights.columns, h),
                rel_tol,
                abs_tol,
            )
        )
    return reports


def check_loss(
    definition: LossDefinition,
    rng: Rng,
    instances: int = 20,
    size: int = 16,
    dim: int = 8,
    n_classes: int = 4,
    h: float = DEFAULT_STEP,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    corrupt: float = 0.0,
) -> LossCheck:
    if instances < 1:
        raise ArgumentError(f"instances must be at least 1, got {instances}")
    failures = 0
    max_rel = 0.0
    max_abs = 0.0
    for _ in range(instances):
        instance = make_instance(definition, rng, size, dim, n_classes)
        reports = check_instance(definition, instance, h, rel_tol, abs_tol, corrupt)
        failures += sum(1 for r in reports if not r.passed)
        max_rel = max(max_rel, *(r.max_rel_error for r in reports))
        max_abs = max(max_abs, *(r.max_abs_error for r in reports))
    check = LossCheck(definition.identifier, instances, failures, max_rel, max_abs)
    logger.info(
        "%s: %d instances, max rel error %.3e, %s",
        check.loss,
        instances,
        max_rel,
        "ok" if check.passed else f"{failures} failing blocks",
    )
    return check


def run_gradient_suite(
    losses: Iterable[str] | None = None,
    seed: int = 0,
    instances: int = 20,
    size: int = 16,
    dim: int = 8,
    n_classes: int = 4,
    h: float = DEFAULT_STEP,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    corrupt: float = 0.0,
) -> list[LossCheck]:
    """
    Gradient-check the named losses (all registered losses when None).

    Every loss draws from its own generator seeded with `seed`, so the result for
    one loss does not depend on which other losses were selected.

    Raises:
        ArgumentError: For an unknown loss name
    """
    if losses is None:
        definitions = list_losses()
    else:
        definitions = [get_loss(name) for name in losses]
    return [
        check_loss(
            definition,
            Rng(seed),
            instances,
            size,
            dim,
            n_classes,
            h,
            rel_tol,
            abs_tol,
            corrupt,
        )
        for definition in definitions
    ]
