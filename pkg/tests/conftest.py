"""Shared fixtures for geptrace tests."""

from pathlib import Path

import numpy as np
import pytest

from geptrace.gep import GepProblem

FIXTURES = Path(__file__).parent / "fixtures" / "matrices"


@pytest.fixture
def matrix_dir() -> Path:
    """Directory holding the matrix text fixtures."""
    return FIXTURES


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def diag_problem() -> GepProblem:
    """A = diag(3, 2, 1), B = I."""
    return GepProblem(np.diag([3.0, 2.0, 1.0]), np.eye(3))


@pytest.fixture
def spd_problem(rng) -> GepProblem:
    """Random 6 x 6 PSD A with a well conditioned PD B."""
    g = rng.standard_normal((6, 6))
    a = g @ g.T / 6
    h = rng.standard_normal((6, 6))
    b = h @ h.T / 6 + np.eye(6)
    return GepProblem(0.5 * (a + a.T), 0.5 * (b + b.T))
