"""Central finite differences and the gradient comparison report."""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from codet.errors import NonFiniteError, ShapeError

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-5
DEFAULT_REL_TOL = 1e-5
REL_ERROR_FLOOR = 1e-8


def finite_difference_gradient(
    f: Callable[[np.ndarray], float],
    x: np.ndarray,
    h: float = DEFAULT_STEP,
) -> np.ndarray:
    """
    Estimate the gradient of a scalar function by central differences.

    Args:
        f: Scalar function of a parameter block
        x: Parameter block (any shape); not modified
        h: Step per coordinate

    Returns:
        Array shaped like x with (f(x + h e_k) - f(x - h e_k)) / 2h per coordinate
    """
    base = np.array(x, dtype=np.float64, copy=True)
    grad = np.zeros_like(base)
    for index in np.ndindex(base.shape):
        original = base[index]
        base[index] = original + h
        f_plus = f(base)
        base[index] = original - h
        f_minus = f(base)
        base[index] = original
        if not (math.isfinite(f_plus) and math.isfinite(f_minus)):
            raise NonFiniteError(f"f(x +/- h) at coordinate {index}: {f_plus}, {f_minus}")
        grad[index] = (f_plus - f_minus) / (2.0 * h)
    return grad


@dataclass(frozen=True)
class GradientReport:
    """Outcome of comparing an analytic gradient against a numeric one."""

    max_rel_error: float
    max_abs_error: float
    worst_index: tuple[int, ...]
    passed: bool


def check_gradient(
    analytic: np.ndarray,
    numeric: np.ndarray,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = 0.0,
) -> GradientReport:
    """
    Compare two gradient blocks coordinate by coordinate.

    The relative error is |a - n| / max(1e-8, |a| + |n|). A coordinate passes
    when its relative error is at most rel_tol, or its absolute error is at
    most abs_tol (0 disables the absolute rule).
    """
    a = np.asarray(analytic, dtype=np.float64)
    n = np.asarray(numeric, dtype=np.float64)
    if a.shape != n.shape:
        raise ShapeError(f"Gradient shapes differ: {a.shape} vs {n.shape}")
    if a.size == 0:
        return GradientReport(0.0, 0.0, (), True)

    abs_err = np.abs(a - n)
    rel_err = abs_err / np.maximum(REL_ERROR_FLOOR, np.abs(a) + np.abs(n))
    ok = (rel_err <= rel_tol) | (abs_err <= abs_tol)
    worst = np.unravel_index(int(np.argmax(rel_err)), a.shape)
    report = GradientReport(
        max_rel_error=float(np.max(rel_err)),
        max_abs_error=float(np.max(abs_err)),
        worst_index=tuple(int(i) for i in worst),
        passed=bool(np.all(ok)),
    )
    logger.debug("gradient check: %s", report)
    return report
