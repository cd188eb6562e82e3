"""Shared pieces of every loss: enums, normalization with its backward pass,
and the canonical batch order that makes losses permutation invariant."""

from enum import StrEnum

import numpy as np

from codet.types.batch import EmbeddingBatch

# floor for sin(theta) when differentiating cos(theta + m) at theta = 0 or pi
SIN_FLOOR = 1e-12


class Modulation(StrEnum):
    NONE = "none"
    ARCFACE = "arcface"
    CURRICULUM = "curriculum"


class DenominatorMode(StrEnum):
    ALL_OTHERS = "all_others"
    NEGATIVES_ONLY = "negatives_only"


class Distance(StrEnum):
    COSINE = "cosine"
    EUCLIDEAN = "euclidean"


def normalize_rows(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return (unit rows, row norms)."""
    norms = np.linalg.norm(matrix, axis=1)
    return matrix / norms[:, None], norms


def normalize_backward(grad_unit: np.ndarray, unit: np.ndarray, norms: np.ndarray) -> np.ndarray:
    """Pull a gradient w.r.t. unit rows back to the raw rows."""
    radial = np.sum(grad_unit * unit, axis=1, keepdims=True)
    return (grad_unit - radial * unit) / norms[:, None]


def cosine_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.clip(a @ b.T, -1.0, 1.0)


def canonical_order(batch: EmbeddingBatch) -> np.ndarray:
    """Sort by label, then by coordinates, so any permutation of a batch is
    evaluated with the same floating-point summation order."""
    keys = tuple(batch.points[:, k] for k in range(batch.dim - 1, -1, -1)) + (batch.labels,)
    return np.lexsort(keys)


def unsort_rows(sorted_rows: np.ndarray, order: np.ndarray) -> np.ndarray:
    out = np.empty_like(sorted_rows)
    out[order] = sorted_rows
    return out


def distance_from_cosine(cos: np.ndarray, distance: Distance) -> tuple[np.ndarray, float]:
    """Return (d, dd/dcos). Cosine distance drops the constant 1; squared
    Euclidean distance between unit vectors is 2 - 2cos."""
    if distance == Distance.COSINE:
        return -cos, -1.0
    return 2.0 - 2.0 * cos, -2.0
