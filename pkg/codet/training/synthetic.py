"""Seeded synthetic clusters on the unit sphere."""

from dataclasses import dataclass

import numpy as np

from codet.errors import ArgumentError
from codet.numerics.rng import Rng
from codet.types.batch import EmbeddingBatch


@dataclass(frozen=True)
class SyntheticSpec:
    """n_classes clusters of points_per_class unit points in dim dimensions."""

    n_classes: int = 3
    points_per_class: int = 20
    dim: int = 8
    cluster_spread: float = 0.3
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_classes < 2:
            raise ArgumentError(f"n_classes must be at least 2, got {self.n_classes}")
        if self.points_per_class < 1:
            raise ArgumentError(
                f"points_per_class must be at least 1, got {self.points_per_class}"
            )
        if self.dim < 2:
            raise ArgumentError(f"dim must be at least 2, got {self.dim}")
        if self.cluster_spread < 0:
            raise ArgumentError(f"cluster_spread must be non-negative, got {self.cluster_spread}")


def _unit(vector: np.ndarray) -> np.ndarray:
    return vector / np.linalg.norm(vector)


def _gauss_vector(rng: Rng, dim: int) -> np.ndarray:
    return np.array([rng.gauss() for _ in range(dim)])


def generate_synthetic(spec: SyntheticSpec) -> EmbeddingBatch:
    """
    Draw random unit class centers, then perturb each point of a class from its
    center by Gaussian noise of scale cluster_spread and renormalize.

    Points are laid out class by class; labels are 0..n_classes-1.
    """
    rng = Rng(spec.seed)
    centers = []
    for _ in range(spec.n_classes):
        center = _gauss_vector(rng, spec.dim)
        while not np.any(center):
            center = _gauss_vector(rng, spec.dim)
        centers.append(_unit(center))

    points = []
    labels = []
    for label, center in enumerate(centers):
        for _ in range(spec.points_per_class):
            noise = _gauss_vector(rng, spec.dim)
            if spec.cluster_spread == 0.0:
                points.append(center.copy())
            else:
                points.append(_unit(center + spec.cluster_spread * noise))
            labels.append(label)
    return EmbeddingBatch(np.array(points), np.array(labels))
