"""Jacobi rotation kernels shared by the symmetric eigensolver and the SVD.

Both kernels work in place on float64 copies owned by the caller. The
two-sided kernel diagonalizes a symmetric matrix by cyclic sweeps over all
(p, q) pairs; the one-sided kernel (Hestenes) orthogonalizes the columns of
a tall matrix with the same rotation formula.
"""

import math
from typing import Tuple

import numpy as np

from ..errors import NoConvergence

MAX_SWEEPS = 100
_EPS = float(np.finfo(np.float64).eps)


def rotation(app: float, aqq: float, apq: float) -> Tuple[float, float]:
    """
    Cosine and sine of the rotation that annihilates the (p, q) entry.

    Uses the smaller root of t^2 + 2*theta*t - 1 = 0, theta = (aqq - app) / (2 apq),
    so the rotation angle stays in [-pi/4, pi/4].

    Args:
        app: Diagonal entry (or squared norm) for index p
        aqq: Diagonal entry (or squared norm) for index q
        apq: Coupling entry (or inner product), nonzero

    Returns:
        Tuple of (c, s)
    """
    theta = (aqq - app) / (2.0 * apq)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    return c, t * c


def _rotate_columns(m: np.ndarray, p: int, q: int, c: float, s: float) -> None:
    mp = m[:, p].copy()
    mq = m[:, q].copy()
    m[:, p] = c * mp - s * mq
    m[:, q] = s * mp + c * mq


def _rotate_rows(m: np.ndarray, p: int, q: int, c: float, s: float) -> None:
    mp = m[p, :].copy()
    mq = m[q, :].copy()
    m[p, :] = c * mp - s * mq
    m[q, :] = s * mp + c * mq


def max_off_diagonal(a: np.ndarray) -> float:
    """Largest absolute off-diagonal entry (0 for 1x1)."""
    n = a.shape[0]
    if n < 2:
        return 0.0
    off = np.abs(a - np.diag(np.diag(a)))
    return float(off.max())


def cyclic_jacobi(
    a: np.ndarray,
    tol: float = 1e-12,
    max_sweeps: int = MAX_SWEEPS,
) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Diagonalize a symmetric matrix by cyclic Jacobi sweeps.

    Sweeps until the largest off-diagonal entry is at most tol * ||a||_F.

    Args:
        a: Symmetric matrix, overwritten
        tol: Relative off-diagonal threshold
        max_sweeps: Sweep limit

    Returns:
        Tuple of (diagonal, accumulated rotations V, sweeps used) with a = V diag V^T

    Raises:
        NoConvergence: If the sweep limit is exceeded
    """
    n = a.shape[0]
    v = np.eye(n)
    threshold = tol * float(np.linalg.norm(a))

    for sweep in range(max_sweeps + 1):
        if max_off_diagonal(a) <= threshold:
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                c, s = rotation(a[p, p], a[q, q], apq)
                _rotate_columns(a, p, q, c, s)
                _rotate_rows(a, p, q, c, s)
                a[p, q] = 0.0
                a[q, p] = 0.0
                _rotate_columns(v, p, q, c, s)

    raise NoConvergence(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
        f"(off-diagonal {max_off_diagonal(a):.3e} > {threshold:.3e})",
        sweeps=max_sweeps,
    )


def one_sided_jacobi(
    x: np.ndarray,
    max_sweeps: int = MAX_SWEEPS,
) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Orthogonalize the columns of a tall matrix (rows >= cols) by Hestenes rotations.

    Args:
        x: Matrix with at least as many rows as columns, overwritten
        max_sweeps: Sweep limit

    Returns:
        Tuple of (U with mutually orthogonal columns, orthogonal V, sweeps used),
        with x_original = U V^T

    Raises:
        NoConvergence: If the sweep limit is exceeded
    """
    n = x.shape[1]
    v = np.eye(n)
    tol = max(1e-15, n * _EPS)
    floor = (_EPS * float(np.linalg.norm(x))) ** 2

    for sweep in range(max_sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                xi = x[:, i]
                xj = x[:, j]
                alpha = float(xi @ xi)
                beta = float(xj @ xj)
                gamma = float(xi @ xj)
                if abs(gamma) <= floor or abs(gamma) <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                c, s = rotation(alpha, beta, gamma)
                _rotate_columns(x, i, j, c, s)
                _rotate_columns(v, i, j, c, s)
        if not rotated:
            return x, v, sweep + 1

    raise NoConvergence(
        f"One-sided Jacobi SVD did not converge in {max_sweeps} sweeps",
        sweeps=max_sweeps,
    )
