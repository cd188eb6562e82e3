"""Detection-side value types: embeddings, detections, scored pairs."""

import math
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from codet.errors import ArgumentError
from codet.types.box import BBox

NORM_TOLERANCE = 1e-9
# rounding slack for probability vectors read back from text dumps
PROB_SUM_TOLERANCE = 1e-6


class Embedding:
    """A unit-norm representation vector. The constructor normalizes its input."""

    def __init__(self, values: Sequence[float] | np.ndarray):
        array = np.asarray(values, dtype=np.float64).reshape(-1)
        if array.size == 0:
            raise ArgumentError("Embedding must have at least one component")
        norm = float(np.linalg.norm(array))
        if norm == 0.0 or not math.isfinite(norm):
            raise ArgumentError("Cannot normalize a zero or non-finite embedding")
        self._values = array / norm
        self._values.setflags(write=False)

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def dim(self) -> int:
        return int(self._values.size)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"Embedding({self._values.tolist()!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Embedding):
            return bool(np.array_equal(self._values, other._values))
        return False

    def __hash__(self) -> int:
        return hash(self._values.tobytes())


def _check_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ArgumentError(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class Detection:
    """A predicted box with objectness p_o, centeredness p_c and an embedding."""

    box: BBox
    objectness: float
    centeredness: float
    embedding: Embedding

    def __post_init__(self) -> None:
        _check_unit("objectness", self.objectness)
        _check_unit("centeredness", self.centeredness)


@dataclass(frozen=True)
class ClassProbBox:
    """A box from a standard detector with its per-category probabilities."""

    box: BBox
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.probs:
            raise ArgumentError("ClassProbBox needs at least one category probability")
        for p in self.probs:
            _check_unit("probability", p)
        total = math.fsum(self.probs)
        if total > 1.0 + PROB_SUM_TOLERANCE:
            raise ArgumentError(f"Category probabilities must sum to at most 1, got {total:g}")


@dataclass(frozen=True)
class GroundTruthBox:
    """An annotated box with its category index."""

    box: BBox
    category: int


@dataclass(frozen=True)
class ScoredPair:
    """A cross-image pair of detection indices with its matching score."""

    index_a: int
    index_b: int
    score: float


class HasBox(Protocol):
    """Anything carrying a box: detections, baseline boxes, ground truth."""

    @property
    def box(self) -> BBox: ...
