"""Tests for the stable reductions."""

import math

import numpy as np
import pytest

from codet.errors import ArgumentError
from codet.numerics.stable import log_sum_exp, log_sum_exp_rows, softmax_rows


class TestLogSumExp:
    def test_single_zero(self):
        assert log_sum_exp([0.0]) == 0.0

    def test_two_zeros(self):
        assert log_sum_exp([0.0, 0.0]) == pytest.approx(math.log(2), abs=1e-15)

    def test_large_values(self):
        assert log_sum_exp([1000.0, 1000.0]) == pytest.approx(1000 + math.log(2), abs=1e-12)

    def test_singleton_is_exact(self):
        for v in (-1e300, -3.5, 0.1, 7.0, 1e300):
            assert log_sum_exp([v]) == v

    def test_no_overflow_at_extremes(self):
        assert log_sum_exp([1e300, 1e300]) == 1e300
        assert log_sum_exp([-1e300, -1e300]) == pytest.approx(-1e300)
        assert log_sum_exp([1e300, -1e300]) == 1e300

    def test_matches_naive_on_moderate_values(self):
        values = [-2.0, 0.5, 1.25, 3.0]
        naive = math.log(sum(math.exp(v) for v in values))
        assert log_sum_exp(values) == pytest.approx(naive, abs=1e-12)

    def test_accepts_generators(self):
        assert log_sum_exp(float(v) for v in range(3)) == pytest.approx(
            math.log(1 + math.e + math.e**2), abs=1e-12
        )

    def test_empty_raises(self):
        with pytest.raises(ArgumentError, match="empty"):
            log_sum_exp([])


class TestRowwise:
    def test_rows_match_scalar(self):
        matrix = np.array([[0.0, 1.0, 2.0], [1000.0, 1000.0, 999.0]])
        expected = [log_sum_exp(row) for row in matrix]
        assert np.allclose(log_sum_exp_rows(matrix), expected, rtol=0, atol=1e-12)

    def test_negative_infinity_is_absent(self):
        matrix = np.array([[0.0, -np.inf], [2.0, -np.inf]])
        assert np.allclose(log_sum_exp_rows(matrix), [0.0, 2.0])

    def test_softmax_rows_sum_to_one(self):
        matrix = np.array([[1.0, 2.0, 3.0], [-500.0, 500.0, 0.0]])
        probs = softmax_rows(matrix)
        assert np.allclose(probs.sum(axis=1), 1.0)
        assert probs[1, 1] == pytest.approx(1.0)

    def test_softmax_is_shift_invariant(self):
        row = np.array([[0.3, -1.2, 2.5]])
        assert np.allclose(softmax_rows(row), softmax_rows(row + 40.0), atol=1e-15)
