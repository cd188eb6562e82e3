"""Tests for the finite-difference oracle and the gradient comparison."""

import math

import numpy as np
import pytest

from codet.errors import NonFiniteError, ShapeError
from codet.numerics.gradcheck import check_gradient, finite_difference_gradient


class TestFiniteDifference:
    def test_square(self):
        grad = finite_difference_gradient(lambda x: float(np.sum(x**2)), np.array([3.0]))
        assert grad[0] == pytest.approx(6.0, abs=1e-8)

    def test_constant(self):
        grad = finite_difference_gradient(lambda x: 4.0, np.zeros((2, 3)))
        assert grad.shape == (2, 3)
        assert np.all(grad == 0.0)

    def test_sine(self):
        grad = finite_difference_gradient(lambda x: math.sin(x[0]), np.array([0.0]))
        assert grad[0] == pytest.approx(1.0, abs=1e-9)

    def test_matrix_block(self):
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        grad = finite_difference_gradient(lambda x: float(np.sum(a * x)), np.zeros((2, 2)))
        assert np.allclose(grad, a, atol=1e-9)

    def test_input_is_not_modified(self):
        x = np.array([1.0, 2.0])
        finite_difference_gradient(lambda v: float(v @ v), x)
        assert x.tolist() == [1.0, 2.0]

    def test_non_finite_sample(self):
        with pytest.raises(NonFiniteError, match="coordinate"):
            finite_difference_gradient(lambda x: math.inf, np.array([1.0]))


class TestCheckGradient:
    def test_identical_passes(self):
        g = np.array([1.0, -2.0, 0.5])
        report = check_gradient(g, g.copy())
        assert report.passed
        assert report.max_rel_error == 0.0

    def test_relative_error_fails(self):
        report = check_gradient(np.array([1.0]), np.array([1.1]))
        assert not report.passed
        assert report.max_rel_error == pytest.approx(0.1 / 2.1)
        assert report.max_abs_error == pytest.approx(0.1)

    def test_absolute_tolerance_rescues_tiny_entries(self):
        a, n = np.array([1e-10]), np.array([2e-10])
        assert not check_gradient(a, n).passed
        assert check_gradient(a, n, abs_tol=1e-8).passed

    def test_both_zero(self):
        assert check_gradient(np.zeros(3), np.zeros(3)).passed

    def test_worst_index(self):
        a = np.array([[1.0, 1.0], [1.0, 1.0]])
        n = np.array([[1.0, 1.0], [1.5, 1.0]])
        assert check_gradient(a, n).worst_index == (1, 0)

    def test_empty_blocks(self):
        report = check_gradient(np.zeros((0, 3)), np.zeros((0, 3)))
        assert report.passed

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError, match="shapes differ"):
            check_gradient(np.zeros(2), np.zeros(3))
