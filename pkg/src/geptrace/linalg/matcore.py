"""
Dense linear algebra oracle.

Symmetric eigendecomposition and SVD by Jacobi rotations, matrix square
roots, and principal angles. Every statement the toolkit checks is checked
against these routines, so they avoid LAPACK and keep their own tolerances.

Matrices are float64 numpy arrays; functions return read-only arrays.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
import numpy.typing as npt

from ..errors import (
    NonFiniteValue,
    NotPositiveDefinite,
    NotSymmetric,
    RankDeficient,
    ShapeMismatch,
)
from .jacobi import MAX_SWEEPS, cyclic_jacobi, one_sided_jacobi

Matrix = npt.NDArray[np.float64]
Vector = npt.NDArray[np.float64]

SYM_TOL = 1e-10
PD_TOL = 1e-10
JACOBI_TOL = 1e-12
RANK_TOL = 1e-10


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def as_matrix(x: Union[npt.ArrayLike, Matrix], name: str = "matrix") -> Matrix:
    """
    Validate and copy a 2-D matrix.

    Args:
        x: Array-like with two dimensions
        name: Name used in error messages

    Returns:
        Read-only float64 copy

    Raises:
        ShapeMismatch: If x is not a non-empty 2-D array
        NonFiniteValue: If x contains NaN or Inf
    """
    arr = np.array(x, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ShapeMismatch(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue(f"{name} contains non-finite entries")
    return _frozen(arr)


def as_vector(x: Union[npt.ArrayLike, Vector], name: str = "vector") -> Vector:
    """Validate and copy a 1-D vector (read-only float64)."""
    arr = np.array(x, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise ShapeMismatch(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue(f"{name} contains non-finite entries")
    return _frozen(arr)


def max_abs(x: np.ndarray) -> float:
    """Entrywise max norm ||x||_max."""
    return float(np.max(np.abs(x))) if x.size else 0.0


def require_square(a: Matrix, name: str = "matrix") -> int:
    """Return the dimension of a square matrix or raise ShapeMismatch."""
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"{name} must be square, got shape {a.shape}")
    return a.shape[0]


def check_symmetric(a: Matrix, name: str = "matrix", rel_tol: float = SYM_TOL) -> float:
    """
    Verify symmetry within rel_tol * ||a||_max.

    Returns:
        The asymmetry max|a - a^T|

    Raises:
        ShapeMismatch: If a is not square
        NotSymmetric: If the asymmetry exceeds the tolerance
    """
    require_square(a, name)
    asymmetry = max_abs(a - a.T)
    tolerance = rel_tol * max_abs(a)
    if asymmetry > tolerance:
        raise NotSymmetric(
            f"{name} is not symmetric (max |A - A^T| = {asymmetry:.3e} > {tolerance:.3e})",
            asymmetry=asymmetry,
        )
    return asymmetry


@dataclass(frozen=True, eq=False)
class SymEig:
    """Eigendecomposition of a symmetric matrix, eigenvalues descending."""

    eigenvalues: Vector
    eigenvectors: Matrix
    sweeps: int = 0

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> Matrix:
        """U diag(lambda) U^T."""
        u = self.eigenvectors
        return _frozen((u * self.eigenvalues) @ u.T)


@dataclass(frozen=True, eq=False)
class Svd:
    """Thin SVD X = sum_j singulars[j] left[:, j] right[:, j]^T, singulars descending."""

    left: Matrix
    singulars: Vector
    right: Matrix
    sweeps: int = 0

    def reconstruct(self) -> Matrix:
        return _frozen((self.left * self.singulars) @ self.right.T)


def _sign_normalize(vectors: np.ndarray, partner: np.ndarray = None) -> None:
    # Largest-magnitude entry positive; ties resolve to the first index
    for j in range(vectors.shape[1]):
        idx = int(np.argmax(np.abs(vectors[:, j])))
        if vectors[idx, j] < 0:
            vectors[:, j] *= -1.0
            if partner is not None:
                partner[:, j] *= -1.0


def sym_eig(A: Matrix, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS) -> SymEig:
    """
    Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Eigenvalues come out descending; equal eigenvalues keep the order in which
    the rotations left them, and each eigenvector is flipped so that its
    largest-magnitude entry is positive.

    Args:
        A: Symmetric matrix (within 1e-10 * ||A||_max)
        tol: Relative off-diagonal stopping threshold (against ||A||_F)
        max_sweeps: Sweep limit

    Returns:
        SymEig

    Raises:
        NotSymmetric: If A is not symmetric
        NoConvergence: If the sweep limit is exceeded
    """
    a = as_matrix(A, "A")
    check_symmetric(a, "A")

    work = 0.5 * (a + a.T)
    diag, vectors, sweeps = cyclic_jacobi(work, tol=tol, max_sweeps=max_sweeps)

    order = np.argsort(-diag, kind="stable")
    eigenvalues = diag[order].copy()
    eigenvectors = vectors[:, order].copy()
    _sign_normalize(eigenvectors)

    return SymEig(_frozen(eigenvalues), _frozen(eigenvectors), sweeps)


def _complete_basis(columns: list, m: int) -> np.ndarray:
    # Orthonormal vector orthogonal to every vector in columns, from the standard basis
    basis = np.array(columns).T if columns else np.zeros((m, 0))
    best, best_norm = None, -1.0
    for i in range(m):
        candidate = np.zeros(m)
        candidate[i] = 1.0
        for _ in range(2):
            candidate = candidate - basis @ (basis.T @ candidate)
        norm = float(np.linalg.norm(candidate))
        if norm > 0.5:
            return candidate / norm
        if norm > best_norm:
            best, best_norm = candidate, norm
    return best / best_norm


def _svd_tall(x: np.ndarray, max_sweeps: int):
    m, n = x.shape
    u, v, sweeps = one_sided_jacobi(x.copy(), max_sweeps=max_sweeps)

    norms = np.linalg.norm(u, axis=0)
    order = np.argsort(-norms, kind="stable")
    singulars = norms[order]
    u = u[:, order]
    v = v[:, order]

    top = float(singulars[0]) if n else 0.0
    left_columns = []
    for j in range(n):
        candidate = None
        if top > 0 and singulars[j] > 1e-13 * top:
            candidate = u[:, j] / singulars[j]
            if left_columns:
                basis = np.array(left_columns).T
                for _ in range(2):
                    candidate = candidate - basis @ (basis.T @ candidate)
            norm = float(np.linalg.norm(candidate))
            candidate = candidate / norm if norm > 0.5 else None
        if candidate is None:
            candidate = _complete_basis(left_columns, m)
        left_columns.append(candidate)

    left = np.array(left_columns).T.reshape(m, n)
    return left, singulars, v, sweeps


def svd(X: Matrix, max_sweeps: int = MAX_SWEEPS) -> Svd:
    """
    Thin singular value decomposition by one-sided Jacobi on columns.

    Returns q = min(rows, cols) singular triples with singulars descending,
    orthonormal left and right vectors, and each right vector's largest entry
    positive (the left vector flips with it).

    Raises:
        NoConvergence: If the sweep limit is exceeded
    """
    x = as_matrix(X, "X")
    rows, cols = x.shape

    if rows >= cols:
        left, singulars, right, sweeps = _svd_tall(np.array(x), max_sweeps)
    else:
        # X^T = U S V^T  =>  X = V S U^T
        right, singulars, left, sweeps = _svd_tall(np.array(x.T), max_sweeps)

    left = np.array(left)
    right = np.array(right)
    _sign_normalize(right, partner=left)

    return Svd(_frozen(left), _frozen(np.array(singulars)), _frozen(right), sweeps)


def mat_pow_half(B: Matrix, sign: int = 1) -> Matrix:
    """
    B^{1/2} (sign=+1) or B^{-1/2} (sign=-1) of a symmetric positive definite matrix.

    Computed as U diag(lambda^{+-1/2}) U^T from sym_eig, then symmetrized.

    Raises:
        NotPositiveDefinite: If min eigenvalue <= 1e-10 * ||B||_max
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    b = as_matrix(B, "B")
    eig = sym_eig(b)
    lam_min = float(eig.eigenvalues[-1])
    threshold = PD_TOL * max_abs(b)
    if not lam_min > threshold:
        raise NotPositiveDefinite(
            f"B is not positive definite (min eigenvalue {lam_min:.3e} <= {threshold:.3e})",
            min_eigenvalue=lam_min,
        )
    u = eig.eigenvectors
    powered = (u * eig.eigenvalues ** (0.5 * sign)) @ u.T
    return _frozen(0.5 * (powered + powered.T))


def orthonormal_basis(W: Matrix, name: str = "W") -> Matrix:
    """
    Orthonormal basis of col(W) from the SVD of W.

    Raises:
        RankDeficient: If W does not have full column rank (relative 1e-10)
    """
    w = as_matrix(W, name)
    rows, cols = w.shape
    if cols > rows:
        raise RankDeficient(f"{name} has more columns ({cols}) than rows ({rows})")
    decomposition = svd(w)
    s = decomposition.singulars
    if not s[0] > 0 or s[-1] <= RANK_TOL * s[0]:
        raise RankDeficient(
            f"{name} is rank deficient (singular values {s[0]:.3e} .. {s[-1]:.3e})"
        )
    return decomposition.left


def principal_angles(W1: Matrix, W2: Matrix) -> Vector:
    """
    Principal angles between col(W1) and col(W2), ascending in [0, pi/2].

    Cosines come from the singular values of Q1^T Q2; angles below pi/4 are
    taken from the sines, the singular values of (I - Q1 Q1^T) Q2, which keeps
    them accurate near zero.

    Raises:
        ShapeMismatch: If row or column counts differ
        RankDeficient: If either input lacks full column rank
    """
    w1 = as_matrix(W1, "W1")
    w2 = as_matrix(W2, "W2")
    if w1.shape != w2.shape:
        raise ShapeMismatch(f"W1 {w1.shape} and W2 {w2.shape} must have the same shape")

    q1 = orthonormal_basis(w1, "W1")
    q2 = orthonormal_basis(w2, "W2")

    overlap = q1.T @ q2
    cosines = np.clip(svd(overlap).singulars, 0.0, 1.0)
    sines = np.clip(svd(q2 - q1 @ overlap).singulars, 0.0, 1.0)[::-1]

    angles = np.where(cosines ** 2 >= 0.5, np.arcsin(sines), np.arccos(cosines))
    return _frozen(np.sort(angles))


def containment_angle(inner: Matrix, outer: Matrix) -> float:
    """
    Largest principal angle of col(inner) measured against col(outer).

    Zero exactly when col(inner) lies inside col(outer). Requires
    dim col(inner) <= dim col(outer).

    Raises:
        ShapeMismatch: If row counts differ or inner has more columns
        RankDeficient: If either input lacks full column rank
    """
    a = as_matrix(inner, "inner")
    b = as_matrix(outer, "outer")
    if a.shape[0] != b.shape[0] or a.shape[1] > b.shape[1]:
        raise ShapeMismatch(
            f"cannot measure containment of {a.shape} in {b.shape}"
        )
    qa = orthonormal_basis(a, "inner")
    qb = orthonormal_basis(b, "outer")
    residual = qa - qb @ (qb.T @ qa)
    largest_sine = float(np.clip(svd(residual).singulars[0], 0.0, 1.0))
    return float(np.arcsin(largest_sine))


def op_norm(X: Matrix) -> float:
    """Spectral norm (largest singular value)."""
    return float(svd(X).singulars[0])
