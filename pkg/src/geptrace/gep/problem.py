"""Generalized eigenvalue problems (A, B) and their dense oracle solution.

The solver reduces Aw = lambda Bw to a standard symmetric problem by
whitening: A~ = B^{-1/2} A B^{-1/2}. Eigenvectors w~ of A~ map back to
generalized eigenvectors w = B^{-1/2} w~, which are B-orthonormal.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Tuple

import numpy as np

from ..errors import BadK, NotPositiveDefinite, NotPSD, ShapeMismatch
from ..linalg.matcore import (
    PD_TOL,
    Matrix,
    SymEig,
    Vector,
    as_matrix,
    check_symmetric,
    containment_angle,
    max_abs,
    sym_eig,
)
from ..utils.logging import get_logger

logger = get_logger(__name__)

GAP_TOL = 1e-8
PSD_TOL = 1e-10


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GepProblem:
    """
    The pair (A, B): A symmetric, B symmetric positive definite, both d x d.

    Construction validates both matrices; B's eigendecomposition is kept for
    the whitening reduction. Positive semi-definiteness of A is only checked
    by operations that need it (require_psd_a).
    """

    A: Matrix
    B: Matrix
    b_eig: SymEig = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        a = as_matrix(self.A, "A")
        b = as_matrix(self.B, "B")
        check_symmetric(a, "A")
        check_symmetric(b, "B")
        if a.shape != b.shape:
            raise ShapeMismatch(f"A {a.shape} and B {b.shape} must have the same shape")

        b_eig = sym_eig(b)
        lam_min = float(b_eig.eigenvalues[-1])
        threshold = PD_TOL * max_abs(b)
        if not lam_min > threshold:
            raise NotPositiveDefinite(
                f"B is not positive definite (min eigenvalue {lam_min:.3e} <= {threshold:.3e})",
                min_eigenvalue=lam_min,
            )

        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "b_eig", b_eig)

    @property
    def d(self) -> int:
        return int(self.A.shape[0])

    @property
    def b_condition(self) -> float:
        values = self.b_eig.eigenvalues
        return float(values[0] / values[-1])

    def b_power(self, sign: int) -> Matrix:
        """B^{1/2} (sign=+1) or B^{-1/2} (sign=-1) from the cached decomposition."""
        u = self.b_eig.eigenvectors
        powered = (u * self.b_eig.eigenvalues ** (0.5 * sign)) @ u.T
        return _frozen(0.5 * (powered + powered.T))

    def require_psd_a(self) -> None:
        """
        Raise NotPSD unless A is positive semi-definite (min eigenvalue >= -1e-10 * ||A||_max).
        """
        lam_min = float(sym_eig(self.A).eigenvalues[-1])
        if lam_min < -PSD_TOL * max_abs(self.A):
            raise NotPSD(
                f"A is not positive semi-definite (min eigenvalue {lam_min:.3e})",
                min_eigenvalue=lam_min,
            )


@dataclass(frozen=True, eq=False)
class GepSolution:
    """Generalized eigenpairs, eigenvalues descending, eigenvectors B-orthonormal."""

    eigenvalues: Vector
    eigenvectors: Matrix
    gaps: Vector

    @property
    def d(self) -> int:
        return int(self.eigenvalues.shape[0])

    def top_sum(self, k: int) -> float:
        """Sum of the k largest generalized eigenvalues."""
        return float(np.sum(self.eigenvalues[:k]))

    def gap_at(self, k: int) -> float:
        """lambda_k - lambda_{k+1} (1-based k); infinite when k = d."""
        if k >= self.d:
            return float("inf")
        return float(self.eigenvalues[k - 1] - self.eigenvalues[k])


class TopK(NamedTuple):
    """A top-k basis together with its uniqueness flag."""

    basis: Matrix
    unique: bool
    gap: float


def whiten(p: GepProblem, check_psd: bool = False) -> Tuple[Matrix, Matrix]:
    """
    Reduce (A, B) to a standard problem.

    Args:
        p: Validated problem
        check_psd: Also verify that A, and hence A~, is positive semi-definite

    Returns:
        Tuple of (A~ = B^{-1/2} A B^{-1/2}, B^{-1/2})

    Raises:
        NotPSD: If check_psd is set and A (or A~) is not PSD
    """
    b_inv_half = p.b_power(-1)
    a_tilde = b_inv_half @ p.A @ b_inv_half
    a_tilde = _frozen(0.5 * (a_tilde + a_tilde.T))

    if check_psd:
        p.require_psd_a()
        lam_min = float(sym_eig(a_tilde).eigenvalues[-1])
        if lam_min < -PSD_TOL * max(max_abs(a_tilde), 1.0):
            raise NotPSD(
                f"whitened A is not positive semi-definite (min eigenvalue {lam_min:.3e})",
                min_eigenvalue=lam_min,
            )

    return a_tilde, b_inv_half


def solve_dense(p: GepProblem) -> GepSolution:
    """
    Dense oracle solution of Aw = lambda Bw.

    Eigendecomposes A~ with the Jacobi solver and maps eigenvectors back with
    B^{-1/2}.
    """
    a_tilde, b_inv_half = whiten(p)
    eig = sym_eig(a_tilde)
    vectors = b_inv_half @ eig.eigenvectors
    eigenvalues = np.array(eig.eigenvalues)
    gaps = eigenvalues[:-1] - eigenvalues[1:]

    logger.debug(f"solve_dense: d={p.d}, {eig.sweeps} Jacobi sweeps, lambda_1={eigenvalues[0]:.6g}")
    return GepSolution(_frozen(eigenvalues), _frozen(vectors), _frozen(gaps))


def top_k(sol: GepSolution, k: int, gap_tol: float = GAP_TOL) -> TopK:
    """
    First k generalized eigenvectors of the oracle solution.

    The basis is unique as a subspace only when lambda_k - lambda_{k+1} > gap_tol;
    the flag is returned with the basis.

    Raises:
        BadK: If k is outside 1..d
    """
    if not 1 <= k <= sol.d:
        raise BadK(f"k must be in 1..{sol.d}, got {k}")
    gap = sol.gap_at(k)
    unique = gap > gap_tol
    if not unique:
        logger.warning(f"top-{k} subspace is not unique (gap {gap:.3e} <= {gap_tol:.1e})")
    basis = _frozen(np.array(sol.eigenvectors[:, :k]))
    return TopK(basis, unique, gap)


def top_k_distance(sol: GepSolution, W: Matrix, k: int, gap_tol: float = GAP_TOL) -> float:
    """
    Angle-valued distance of col(W) from the set of top-k subspaces.

    col(W) must contain every eigenvector with lambda_i > lambda_k + gap_tol and
    lie inside the span of those with lambda_i >= lambda_k - gap_tol; the
    result is the larger of the two containment angles. With a unique top-k
    subspace this is the largest principal angle to it.

    Raises:
        ShapeMismatch: If W is not d x k
        RankDeficient: If W lacks full column rank
    """
    w = as_matrix(W, "W")
    if w.shape != (sol.d, k):
        raise ShapeMismatch(f"W must be {sol.d} x {k}, got {w.shape}")

    lam = sol.eigenvalues
    lam_k = lam[k - 1]
    above = int(np.sum(lam > lam_k + gap_tol))
    cluster = int(np.sum(lam >= lam_k - gap_tol))

    distance = containment_angle(w, sol.eigenvectors[:, :cluster])
    if above > 0:
        distance = max(distance, containment_angle(sol.eigenvectors[:, :above], w))
    return distance


def spans_top_k(
    sol: GepSolution,
    W: Matrix,
    k: int,
    angle_tol: float = 1e-7,
    gap_tol: float = GAP_TOL,
) -> bool:
    """True when col(W) is a top-k subspace within angle_tol."""
    return top_k_distance(sol, W, k, gap_tol=gap_tol) <= angle_tol
