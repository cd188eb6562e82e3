"""Shared numerics: stable reductions, gradient oracle, seeded generator."""

from codet.numerics.gradcheck import GradientReport, check_gradient, finite_difference_gradient
from codet.numerics.rng import Rng, splitmix64
from codet.numerics.stable import log_sum_exp, log_sum_exp_rows, softmax_rows

__all__ = [
    "GradientReport",
    "Rng",
    "check_gradient",
    "finite_difference_gradient",
    "log_sum_exp",
    "log_sum_exp_rows",
    "softmax_rows",
    "splitmix64",
]
