"""Numerically stable reductions."""

import math
from typing import Iterable

import numpy as np

from codet.errors import ArgumentError


def log_sum_exp(values: Iterable[float]) -> float:
    """log(sum(exp(v))) by max-shift; no overflow for |v| up to 1e300."""
    array = np.fromiter(values, dtype=np.float64)
    if array.size == 0:
        raise ArgumentError("log_sum_exp of an empty sequence")
    if array.size == 1:
        return float(array[0])
    peak = float(np.max(array))
    if math.isinf(peak):
        return peak
    return peak + math.log(float(np.sum(np.exp(array - peak))))


def log_sum_exp_rows(matrix: np.ndarray) -> np.ndarray:
    """Row-wise log-sum-exp. Entries of -inf are treated as absent terms."""
    peak = np.max(matrix, axis=-1, keepdims=True)
    shifted = np.exp(matrix - peak)
    return peak[..., 0] + np.log(np.sum(shifted, axis=-1))


def softmax_rows(matrix: np.ndarray) -> np.ndarray:
    """Row-wise softmax, consistent with log_sum_exp_rows."""
    peak = np.max(matrix, axis=-1, keepdims=True)
    shifted = np.exp(matrix - peak)
    return shifted / np.sum(shifted, axis=-1, keepdims=True)
