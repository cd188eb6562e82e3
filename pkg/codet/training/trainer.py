"""Full-batch gradient descent of free embedding points (and class weights)."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from codet.errors import ArgumentError, NonFiniteError
from codet.losses.classwise import negative_breakdown
from codet.losses.common import Distance
from codet.losses.curriculum import DEFAULT_EMA_DECAY, CurriculumState
from codet.losses.modulation import NegativeKind
from codet.losses.pairwise import pair_negative_breakdown
from codet.losses.registry import get_loss
from codet.numerics.rng import Rng
from codet.training.metrics import embedding_metrics
from codet.types.batch import ClassWeights, EmbeddingBatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainConfig:
    loss: str = "curcon"
    # None takes the loss's registered default
    scale: float | None = None
    margin: float | None = None
    distance: Distance = Distance.COSINE
    steps: int = 500
    learning_rate: float = 0.1
    log_every: int = 10
    ema_decay: float = DEFAULT_EMA_DECAY
    initial_t: float = 0.0
    update_curriculum: bool = True
    # seeds the class-weight initialisation
    seed: int = 0

    def __post_init__(self) -> None:
        if self.steps < 1:
            raise ArgumentError(f"steps must be at least 1, got {self.steps}")
        if self.learning_rate < 0 or not math.isfinite(self.learning_rate):
            raise ArgumentError(
                f"learning_rate must be finite and non-negative, got {self.learning_rate}"
            )
        if self.log_every < 1:
            raise ArgumentError(f"log_every must be at least 1, got {self.log_every}")
        object.__setattr__(self, "distance", Distance(self.distance))


@dataclass(frozen=True)
class TraceRow:
    """One logged step. Loss and metrics are taken before the step's update,
    t after it."""

    step: int
    loss: float
    t: float | None
    intra: float | None
    inter: float
    hard_fraction: float


@dataclass
class TrainResult:
    batch: EmbeddingBatch
    weights: ClassWeights | None
    state: CurriculumState | None
    trace: list[TraceRow] = field(default_factory=list)


def init_weights(batch: EmbeddingBatch, rng: Rng) -> ClassWeights:
    """Gaussian d x n class weights, n = max(label) + 1 (at least 2)."""
    n_classes = max(int(batch.labels.max()) + 1, 2)
    columns = np.array([[rng.gauss() for _ in range(n_classes)] for _ in range(batch.dim)])
    return ClassWeights(columns)


def _hard_fraction(
    batch: EmbeddingBatch,
    weights: ClassWeights | None,
    margin: float,
) -> float:
    if weights is not None:
        counts = negative_breakdown(batch, weights, margin)
    else:
        counts = pair_negative_breakdown(batch, margin)
    total = sum(counts.values())
    return counts[NegativeKind.HARD] / total if total else 0.0


def train(
    batch: EmbeddingBatch,
    cfg: TrainConfig,
    weights: ClassWeights | None = None,
) -> TrainResult:
    """
    Optimize the raw points (and class weights for class-wise losses).

    Each step evaluates the loss at the current parameters with the current t,
    takes a plain gradient step, then advances t from the same evaluation.
    Steps whose number is a multiple of cfg.log_every are traced.

    Raises:
        ArgumentError: For an unknown loss or a batch the loss cannot use
        NonFiniteError: When the loss or its gradient stops being finite
    """
    definition = get_loss(cfg.loss)
    settings = definition.settings(cfg.scale, cfg.margin, cfg.distance)
    if definition.needs_weights and weights is None:
        weights = init_weights(batch, Rng(cfg.seed))
    if not definition.needs_weights:
        weights = None
    state: CurriculumState | None = None
    if definition.uses_curriculum:
        state = CurriculumState(t=cfg.initial_t, ema_decay=cfg.ema_decay)

    trace: list[TraceRow] = []
    lr = cfg.learning_rate
    for step in range(1, cfg.steps + 1):
        result = definition.evaluate(batch, weights, state, settings)
        if not math.isfinite(result.value):
            raise NonFiniteError(f"{definition.identifier} loss is {result.value}", step)
        if not np.all(np.isfinite(result.grad_points)):
            raise NonFiniteError(f"{definition.identifier} gradient", step)

        snapshot = None
        if step % cfg.log_every == 0:
            snapshot = (
                embedding_metrics(batch),
                _hard_fraction(batch, weights, settings.margin),
            )

        next_batch = batch.with_points(batch.points - lr * result.grad_points)
        if weights is not None and result.grad_weights is not None:
            weights = ClassWeights(weights.columns - lr * result.grad_weights)
        if state is not None and cfg.update_curriculum and definition.advance is not None:
            state = definition.advance(batch, result, state)
        batch = next_batch

        if snapshot is not None:
            metrics, hard = snapshot
            row = TraceRow(
                step=step,
                loss=result.value,
                t=None if state is None else state.t,
                intra=metrics.mean_intra,
                inter=metrics.mean_inter,
                hard_fraction=hard,
            )
            trace.append(row)
            logger.debug("step %d: %s", step, row)

    return TrainResult(batch=batch, weights=weights, state=state, trace=trace)
