"""Intra-class compactness and inter-class separation of an embedding batch."""

from dataclasses import dataclass

import numpy as np

from codet.errors import ArgumentError
from codet.losses.common import cosine_matrix, normalize_rows
from codet.types.batch import EmbeddingBatch


@dataclass(frozen=True)
class EmbeddingMetrics:
    # None when no class has two points
    mean_intra: float | None
    mean_inter: float
    # cosines between the normalized class mean directions, n_classes x n_classes
    center_cosines: np.ndarray

    @property
    def separation(self) -> float | None:
        if self.mean_intra is None:
            return None
        return self.mean_intra - self.mean_inter


def embedding_metrics(batch: EmbeddingBatch) -> EmbeddingMetrics:
    """
    Mean cosine over same-label pairs, mean cosine over cross-label pairs, and
    the cosines between class mean directions.

    Classes are 0..max(label); each must have at least one point. A class whose
    mean direction vanishes gets a zero center, so its cosines read 0.

    Raises:
        ArgumentError: For fewer than two classes or a class without points
    """
    n_classes = int(batch.labels.max()) + 1
    if n_classes < 2:
        raise ArgumentError("embedding_metrics needs at least 2 classes")
    counts = np.bincount(batch.labels, minlength=n_classes)
    if np.any(counts == 0):
        missing = int(np.flatnonzero(counts == 0)[0])
        raise ArgumentError(f"Class {missing} has no points")

    units, _ = normalize_rows(batch.points)
    cos = cosine_matrix(units, units)
    same = batch.labels[:, None] == batch.labels[None, :]
    off_diagonal = ~np.eye(batch.size, dtype=bool)
    intra_mask = same & off_diagonal
    intra = float(np.mean(cos[intra_mask])) if np.any(intra_mask) else None
    inter = float(np.mean(cos[~same]))

    means = np.array([units[batch.labels == c].mean(axis=0) for c in range(n_classes)])
    norms = np.linalg.norm(means, axis=1)
    centers = np.divide(means, norms[:, None], out=np.zeros_like(means), where=norms[:, None] > 0)
    return EmbeddingMetrics(intra, inter, np.clip(centers @ centers.T, -1.0, 1.0))
