"""Tests for the unconstrained trace objective and the perspective functional."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geptrace.errors import BadK, BadLambda, NotPSD, RankDeficient, ShapeMismatch
from geptrace.gep import GepProblem, solve_dense, top_k, whiten
from geptrace.gep.generate import make_instance
from geptrace.objective import (
    Objective,
    b_orthonormalize,
    h_gradient,
    h_value,
    perspective_radius,
    perspective_value,
)


def _finite_difference(obj, w, eps=1e-6):
    grad = np.zeros_like(w)
    for i in range(w.shape[0]):
        for j in range(w.shape[1]):
            step = np.zeros_like(w)
            step[i, j] = eps
            grad[i, j] = (h_value(obj, w + step) - h_value(obj, w - step)) / (2 * eps)
    return grad


class TestObjective:
    """Test h and its gradient."""

    def test_bad_k(self, diag_problem):
        """Test that k must lie in 1..d."""
        with pytest.raises(BadK):
            Objective(diag_problem, 0)
        with pytest.raises(BadK):
            Objective(diag_problem, 4)

    def test_shape_check(self, diag_problem):
        """Test that W must be d x k."""
        with pytest.raises(ShapeMismatch):
            h_value(Objective(diag_problem, 2), np.ones((3, 1)))

    def test_value_at_top_frame(self, diag_problem):
        """Test h = lambda_1 + lambda_2 at the top-2 frame."""
        assert h_value(Objective(diag_problem, 2), np.eye(3)[:, :2]) == pytest.approx(5.0)

    def test_value_at_zero(self, diag_problem):
        """Test h(0) = 0."""
        assert h_value(Objective(diag_problem, 2), np.zeros((3, 2))) == 0.0

    def test_gradient_vanishes_at_top_frame(self, spd_problem):
        """Test that the oracle top-k frame is a stationary point."""
        basis = top_k(solve_dense(spd_problem), 3).basis
        grad = h_gradient(Objective(spd_problem, 3), basis)
        assert np.abs(grad).max() < 1e-9

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1), d=st.integers(2, 6), k=st.integers(1, 3))
    def test_gradient_matches_finite_differences(self, seed, d, k):
        """Test the analytic gradient against central differences."""
        k = min(k, d)
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((d, d))
        h = rng.standard_normal((d, d))
        b = h @ h.T / d + np.eye(d)
        obj = Objective(GepProblem(0.5 * (g + g.T), 0.5 * (b + b.T)), k)
        w = rng.standard_normal((d, k))
        analytic = h_gradient(obj, w)
        numeric = _finite_difference(obj, w)
        assert np.linalg.norm(analytic - numeric) <= 1e-5 * max(1.0, np.linalg.norm(analytic))

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1), d=st.integers(2, 6), k=st.integers(1, 3))
    def test_invariant_under_orthogonal_mixing(self, seed, d, k):
        """Test h(W Q) = h(W) for orthogonal k x k Q."""
        k = min(k, d)
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((d, d))
        h = rng.standard_normal((d, d))
        b = h @ h.T / d + np.eye(d)
        obj = Objective(GepProblem(0.5 * (g + g.T), 0.5 * (b + b.T)), k)
        w = rng.standard_normal((d, k))
        q, _ = np.linalg.qr(rng.standard_normal((k, k)))
        value = h_value(obj, w)
        assert abs(h_value(obj, w @ q) - value) <= 1e-9 * max(1.0, abs(value))

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1), d=st.integers(2, 6), k=st.integers(1, 3))
    def test_whitening_equivariance(self, seed, d, k):
        """Test h(W; A, B) = h(B^{1/2} W; A~, I)."""
        k = min(k, d)
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((d, d))
        h = rng.standard_normal((d, d))
        b = h @ h.T / d + np.eye(d)
        problem = GepProblem(0.5 * (g + g.T), 0.5 * (b + b.T))
        a_tilde, _ = whiten(problem)
        w = rng.standard_normal((d, k))
        value = h_value(Objective(problem, k), w)
        whitened = h_value(Objective(GepProblem(a_tilde, np.eye(d)), k), problem.b_power(1) @ w)
        assert abs(whitened - value) <= 1e-9 * max(1.0, abs(value))


class TestBOrthonormalize:
    """Test the normalization map."""

    def test_produces_b_orthonormal_columns(self, spd_problem, rng):
        """Test W^T B W = I and unchanged column space."""
        obj = Objective(spd_problem, 3)
        w = rng.standard_normal((6, 3))
        normalized = b_orthonormalize(obj, w)
        assert np.abs(normalized.T @ spd_problem.B @ normalized - np.eye(3)).max() < 1e-10
        residual = normalized - w @ np.linalg.lstsq(w, normalized, rcond=None)[0]
        assert np.abs(residual).max() < 1e-10

    def test_does_not_decrease_h(self, spd_problem, rng):
        """Test h(W) <= h(normalized W) for PSD A."""
        obj = Objective(spd_problem, 2)
        for scale in (0.01, 1.0, 30.0):
            w = scale * rng.standard_normal((6, 2))
            assert h_value(obj, w) <= h_value(obj, b_orthonormalize(obj, w)) + 1e-9

    def test_rank_deficient(self, diag_problem):
        """Test that repeated columns raise RankDeficient."""
        w = np.array([[1.0, 1.0], [0.0, 0.0], [1.0, 1.0]])
        with pytest.raises(RankDeficient):
            b_orthonormalize(Objective(diag_problem, 2), w)


class TestPerspective:
    """Test the matrix perspective functional."""

    def test_value_at_identity(self):
        """Test that M = I attains trace(Lambda)."""
        assert perspective_value(np.diag([1.0, 2.0, 3.0]), np.eye(3)) == pytest.approx(6.0)

    def test_value_at_zero_and_two_identity(self):
        """Test that M = 0 and M = 2I both give zero."""
        lam = np.diag([1.0, 4.0])
        assert perspective_value(lam, np.zeros((2, 2))) == 0.0
        assert perspective_value(lam, 2.0 * np.eye(2)) == 0.0

    def test_radius(self):
        """Test R* = 1 + sqrt(1 + (p - 1) lambda_max / lambda_min)."""
        assert perspective_radius(np.diag([1.0, 2.0])) == pytest.approx(1.0 + math.sqrt(3.0))

    def test_rejects_non_diagonal_lambda(self):
        """Test that Lambda must be diagonal."""
        with pytest.raises(BadLambda):
            perspective_value(np.array([[1.0, 0.1], [0.1, 1.0]]), np.eye(2))

    def test_rejects_non_positive_lambda(self):
        """Test that Lambda entries must be positive."""
        with pytest.raises(BadLambda):
            perspective_radius(np.diag([1.0, 0.0]))

    def test_rejects_indefinite_m(self):
        """Test that M must be PSD."""
        with pytest.raises(NotPSD):
            perspective_value(np.eye(2), np.diag([1.0, -0.5]))

    def test_planted_instance_bound(self):
        """Test h <= sum of the top-k generalized eigenvalues on a planted instance."""
        instance = make_instance(5, "5,4,3,2,1", b_cond=5.0, seed=1, planted=True)
        obj = Objective(instance.problem(), 2)
        w = np.random.default_rng(0).standard_normal((5, 2))
        assert h_value(obj, w) <= 9.0 + 1e-9
