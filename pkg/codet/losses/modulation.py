"""Logit modulations T(theta) / N(theta) and the negative-sample taxonomy."""

import math
from enum import StrEnum

import numpy as np

from codet.losses.common import SIN_FLOOR


class NegativeKind(StrEnum):
    HARD = "hard"
    SEMI_HARD = "semi_hard"
    EASY = "easy"


def arcface_modulation(theta_pos: float, theta_neg: float, m: float) -> tuple[float, float]:
    """T = cos(theta_pos + m), N = cos(theta_neg)."""
    return math.cos(theta_pos + m), math.cos(theta_neg)


def curriculum_modulation(
    theta_pos: float, theta_neg: float, m: float, t: float
) -> tuple[float, float]:
    """T = cos(theta_pos + m); N re-weights hard and semi-hard negatives by t + cos."""
    positive = math.cos(theta_pos + m)
    c = math.cos(theta_neg)
    if theta_pos + m <= theta_neg:
        return positive, c
    return positive, c * (t + c)


def classify_negative(theta_pos: float, theta_neg: float, m: float) -> NegativeKind:
    if theta_neg < theta_pos:
        return NegativeKind.HARD
    if theta_neg < theta_pos + m:
        return NegativeKind.SEMI_HARD
    return NegativeKind.EASY


def margin_positive(cos_pos: np.ndarray, m: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Vectorized T = cos(theta + m) = c cos m - sin(theta) sin m and dT/dc.

    No piecewise correction is applied when theta + m exceeds pi.
    """
    if m == 0.0:
        return cos_pos.copy(), np.ones_like(cos_pos)
    sin_theta = np.sqrt(np.maximum(1.0 - cos_pos * cos_pos, 0.0))
    value = cos_pos * math.cos(m) - sin_theta * math.sin(m)
    slope = math.cos(m) + cos_pos * math.sin(m) / np.maximum(sin_theta, SIN_FLOOR)
    return value, slope


def curriculum_negative(
    cos_neg: np.ndarray, theta_pos: np.ndarray, m: float, t: float
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized N(theta) of the curriculum modulation and dN/dc.

    theta_pos broadcasts against cos_neg; each negative is compared with the
    positive angle of its own sample.
    """
    easy = theta_pos + m <= np.arccos(cos_neg)
    value = np.where(easy, cos_neg, cos_neg * (t + cos_neg))
    slope = np.where(easy, 1.0, t + 2.0 * cos_neg)
    return value, slope
