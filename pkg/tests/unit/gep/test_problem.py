"""Tests for GEP validation, whitening and the dense oracle."""

import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geptrace.errors import BadK, NotPositiveDefinite, NotPSD, NotSymmetric, ShapeMismatch
from geptrace.gep import GepProblem, solve_dense, spans_top_k, top_k, top_k_distance, whiten
from geptrace.gep.generate import make_instance
from geptrace.linalg import max_abs


class TestGepProblem:
    """Test problem construction."""

    def test_valid_problem(self, diag_problem):
        """Test that a valid pair is accepted and frozen."""
        assert diag_problem.d == 3
        assert diag_problem.b_condition == pytest.approx(1.0)
        assert not diag_problem.A.flags.writeable

    def test_rejects_asymmetric_a(self):
        """Test that an asymmetric A raises NotSymmetric."""
        with pytest.raises(NotSymmetric):
            GepProblem(np.array([[1.0, 2.0], [0.0, 1.0]]), np.eye(2))

    def test_rejects_indefinite_b(self):
        """Test that an indefinite B raises NotPositiveDefinite."""
        with pytest.raises(NotPositiveDefinite) as exc:
            GepProblem(np.eye(2), np.diag([1.0, -1.0]))
        assert "positive definite" in str(exc.value)

    def test_rejects_shape_mismatch(self):
        """Test that A and B must match."""
        with pytest.raises(ShapeMismatch):
            GepProblem(np.eye(2), np.eye(3))

    def test_require_psd_a(self):
        """Test that an indefinite A fails the PSD requirement."""
        p = GepProblem(np.diag([1.0, -1.0]), np.eye(2))
        with pytest.raises(NotPSD):
            p.require_psd_a()


class TestSolveDense:
    """Test the dense oracle."""

    def test_identity_b_preserves_spectrum(self, diag_problem):
        """Test that B = I returns the eigenvalues of A."""
        sol = solve_dense(diag_problem)
        np.testing.assert_allclose(sol.eigenvalues, [3.0, 2.0, 1.0], atol=1e-14)
        assert sol.top_sum(2) == pytest.approx(5.0)
        assert sol.gap_at(2) == pytest.approx(1.0)
        assert math.isinf(sol.gap_at(3))

    def test_scalar_b(self):
        """Test that B = 2I halves the spectrum."""
        sol = solve_dense(GepProblem(np.diag([4.0, 2.0]), 2.0 * np.eye(2)))
        np.testing.assert_allclose(sol.eigenvalues, [2.0, 1.0])

    def test_planted_spectrum(self):
        """Test that a planted instance has the requested generalized spectrum."""
        instance = make_instance(5, "5,4,3,2,1", b_cond=20.0, seed=3, planted=True)
        sol = solve_dense(instance.problem())
        np.testing.assert_allclose(sol.eigenvalues, [5, 4, 3, 2, 1], atol=1e-9)

    def test_whitened_matrix_is_symmetric(self, spd_problem):
        """Test that B^{-1/2} A B^{-1/2} is symmetric and PSD for PSD A."""
        a_tilde, b_inv_half = whiten(spd_problem, check_psd=True)
        assert max_abs(a_tilde - a_tilde.T) == 0.0
        assert max_abs(b_inv_half @ spd_problem.B @ b_inv_half - np.eye(6)) < 1e-10

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1), d=st.integers(1, 12))
    def test_eigenpairs_and_b_orthonormality(self, seed, d):
        """Test ||Aw - lambda Bw|| and W^T B W = I on random instances."""
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((d, d))
        a = 0.5 * (g + g.T)
        h = rng.standard_normal((d, d))
        b = h @ h.T / d + 0.5 * np.eye(d)
        p = GepProblem(a, 0.5 * (b + b.T))
        sol = solve_dense(p)
        w = sol.eigenvectors
        residual = np.linalg.norm(p.A @ w - (p.B @ w) * sol.eigenvalues, axis=0).max()
        scale = 1.0 + np.linalg.norm(p.A, 2) + np.linalg.norm(p.B, 2)
        assert residual <= 1e-8 * scale
        assert max_abs(w.T @ p.B @ w - np.eye(d)) <= 1e-8

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1), d=st.integers(1, 8), c=st.floats(0.1, 10.0))
    def test_scale_covariance(self, seed, d, c):
        """Test that (cA, cB) keeps the spectrum and (cA, B) scales it by c."""
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((d, d))
        a = 0.5 * (g + g.T)
        h = rng.standard_normal((d, d))
        b = h @ h.T / d + 0.5 * np.eye(d)
        b = 0.5 * (b + b.T)
        base = solve_dense(GepProblem(a, b)).eigenvalues
        tol = 1e-9 * c * (1.0 + np.abs(base).max())
        np.testing.assert_allclose(solve_dense(GepProblem(c * a, c * b)).eigenvalues, base, atol=tol)
        np.testing.assert_allclose(solve_dense(GepProblem(c * a, b)).eigenvalues, c * base, atol=tol)


class TestTopK:
    """Test the top-k basis and subspace membership."""

    def test_unique_top_k(self, diag_problem):
        """Test that a gapped top-2 basis is unique and spans e1, e2."""
        result = top_k(solve_dense(diag_problem), 2)
        assert result.unique
        assert spans_top_k(solve_dense(diag_problem), np.eye(3)[:, :2], 2)

    def test_repeated_eigenvalue_not_unique(self):
        """Test that lambda_k = lambda_{k+1} flags a non-unique subspace."""
        sol = solve_dense(GepProblem(np.diag([3.0, 1.0, 1.0]), np.eye(3)))
        assert not top_k(sol, 2).unique
        # any line in the repeated eigenspace completes a top-2 subspace
        w = np.array([[1.0, 0.0], [0.0, 0.6], [0.0, 0.8]])
        assert top_k_distance(sol, w, 2) < 1e-12

    def test_non_unique_subspace_logs_warning(self, caplog):
        """Test that a repeated eigenvalue at the cut is reported as a warning."""
        sol = solve_dense(GepProblem(np.diag([3.0, 1.0, 1.0]), np.eye(3)))
        with caplog.at_level(logging.WARNING, logger="geptrace.gep.problem"):
            top_k(sol, 2)
        records = [r for r in caplog.records if "not unique" in r.getMessage()]
        assert records
        assert records[0].levelno == logging.WARNING

    def test_distance_of_wrong_subspace(self, diag_problem):
        """Test that the bottom-2 subspace is far from the top-2 one."""
        sol = solve_dense(diag_problem)
        assert top_k_distance(sol, np.eye(3)[:, 1:], 2) == pytest.approx(math.pi / 2)

    def test_bad_k(self, diag_problem):
        """Test that k outside 1..d raises BadK."""
        with pytest.raises(BadK):
            top_k(solve_dense(diag_problem), 4)
