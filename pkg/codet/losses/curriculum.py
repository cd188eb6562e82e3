"""The curriculum parameter t, its moving average, and the focal exponent."""

import math
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from codet.errors import ArgumentError

DEFAULT_EMA_DECAY = 0.99
GAMMA_T_FLOOR = 1e-5


@dataclass(frozen=True)
class CurriculumState:
    """The adaptive scalar t. Immutable: updates return a new state."""

    t: float = 0.0
    ema_decay: float = DEFAULT_EMA_DECAY

    def __post_init__(self) -> None:
        if not 0.0 <= self.t <= 1.0:
            raise ArgumentError(f"t must be in [0, 1], got {self.t}")
        if not 0.0 <= self.ema_decay < 1.0:
            raise ArgumentError(f"ema_decay must be in [0, 1), got {self.ema_decay}")

    def advanced(self, batch_statistic: float) -> "CurriculumState":
        """Blend a batch statistic into t and clamp the result to [0, 1]."""
        blended = (1.0 - self.ema_decay) * batch_statistic + self.ema_decay * self.t
        return replace(self, t=min(1.0, max(0.0, blended)))


def update_t(batch_positive_cosines: Iterable[float], state: CurriculumState) -> CurriculumState:
    """EMA update of t with the batch mean of the positive cosines."""
    cosines = np.fromiter(batch_positive_cosines, dtype=np.float64)
    if cosines.size == 0:
        raise ArgumentError("update_t needs at least one positive cosine")
    return state.advanced(float(np.mean(cosines)))


def focal_gamma(t: float) -> float:
    """gamma(t) = -log(max(t, 1e-5))."""
    return -math.log(max(t, GAMMA_T_FLOOR))
