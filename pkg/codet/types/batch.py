"""Array-valued loss inputs and outputs."""

from dataclasses import dataclass

import numpy as np

from codet.errors import ArgumentError, ShapeError


@dataclass(frozen=True)
class EmbeddingBatch:
    """N labeled d-dimensional points. Rows need not be normalized."""

    points: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        if points.ndim != 2:
            raise ShapeError(f"points must be an N x d array, got shape {points.shape}")
        if points.shape[0] < 1:
            raise ArgumentError("A batch needs at least one point")
        if points.shape[1] < 2:
            raise ArgumentError(f"Embedding dimension must be at least 2, got {points.shape[1]}")
        if labels.shape[0] != points.shape[0]:
            raise ShapeError(f"{labels.shape[0]} labels for {points.shape[0]} points")
        if np.any(labels < 0):
            raise ArgumentError("Labels must be non-negative category indices")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def with_points(self, points: np.ndarray) -> "EmbeddingBatch":
        return EmbeddingBatch(points, self.labels)

    def take(self, order: np.ndarray) -> "EmbeddingBatch":
        return EmbeddingBatch(self.points[order], self.labels[order])


@dataclass(frozen=True)
class ClassWeights:
    """A d x n matrix whose column j is the (unnormalized) center of class j."""

    columns: np.ndarray

    def __post_init__(self) -> None:
        columns = np.asarray(self.columns, dtype=np.float64)
        if columns.ndim != 2:
            raise ShapeError(f"weights must be a d x n array, got shape {columns.shape}")
        if columns.shape[1] < 2:
            raise ArgumentError(f"Need at least 2 classes, got {columns.shape[1]}")
        object.__setattr__(self, "columns", columns)

    @property
    def dim(self) -> int:
        return int(self.columns.shape[0])

    @property
    def n_classes(self) -> int:
        return int(self.columns.shape[1])


@dataclass(frozen=True)
class LossValueGrad:
    """A loss value with gradients w.r.t. the raw points (and class weights)."""

    value: float
    grad_points: np.ndarray
    grad_weights: np.ndarray | None = None
    # per-sample cos(theta_{y_i}); class-wise losses only
    positive_cosines: np.ndarray | None = None


@dataclass(frozen=True)
class PairSets:
    """Positive (U_i) and negative (V_i) index sets per anchor."""

    positives: tuple[np.ndarray, ...]
    negatives: tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return len(self.positives)

    def positive_count(self, anchor: int) -> int:
        return int(self.positives[anchor].size)

    def negative_count(self, anchor: int) -> int:
        return int(self.negatives[anchor].size)
