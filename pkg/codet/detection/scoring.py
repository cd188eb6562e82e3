"""Detection score, embedding cosine and the two pair-matching scores."""

import math

import numpy as np

from codet.errors import ShapeError
from codet.types.detection import Detection, Embedding


def detection_score(d: Detection) -> float:
    """s = p_o * p_c."""
    return d.objectness * d.centeredness


def cosine(a: Embedding, b: Embedding) -> float:
    """Dot product of two unit embeddings, clamped to [-1, 1]."""
    if a.dim != b.dim:
        raise ShapeError(f"Embedding dimensions differ: {a.dim} vs {b.dim}")
    return float(np.clip(np.dot(a.values, b.values), -1.0, 1.0))


def pair_similarity(a: Detection, b: Detection) -> float:
    """sim(b1, b2) = s1 * s2 * cos(x1, x2)."""
    return detection_score(a) * detection_score(b) * cosine(a.embedding, b.embedding)


def combined_score(p1: float, p2: float, sim: float) -> float:
    """p1 * p2 * sqrt(sim); a non-positive similarity scores 0."""
    return p1 * p2 * math.sqrt(max(sim, 0.0))
