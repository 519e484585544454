"""
Unconstrained trace objective for top-k subspaces.

    h(W; A, B) = trace(W^T A W (2I - W^T B W))

For A positive semi-definite and B positive definite, h is bounded above by
the sum of the k largest generalized eigenvalues and every maximizer spans a
top-k subspace. This module evaluates h and its gradient, the matrix
perspective functional trace(Lambda M (2I - M)), and the B-orthonormalization
that never decreases h.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import BadK, BadLambda, NotPSD, RankDeficient, ShapeMismatch
from ..gep.problem import GepProblem
from ..linalg.matcore import (
    RANK_TOL,
    Matrix,
    as_matrix,
    check_symmetric,
    max_abs,
    require_square,
    sym_eig,
)

PSD_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Objective:
    """h(.; A, B) restricted to d x k arguments."""

    problem: GepProblem
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.problem.d:
            raise BadK(f"k must be in 1..{self.problem.d}, got {self.k}")

    @property
    def d(self) -> int:
        return self.problem.d

    def check_shape(self, W: Matrix) -> Matrix:
        """Validate W as a finite d x k matrix."""
        w = as_matrix(W, "W")
        if w.shape != (self.d, self.k):
            raise ShapeMismatch(f"W must be {self.d} x {self.k}, got {w.shape}")
        return w


def _gram_pair(obj: Objective, w: Matrix):
    aw = obj.problem.A @ w
    bw = obj.problem.B @ w
    return aw, bw, w.T @ aw, w.T @ bw


def h_value(obj: Objective, W: Matrix) -> float:
    """
    trace(W^T A W (2I - W^T B W)) for any d x k matrix W.

    Raises:
        ShapeMismatch: If W is not d x k
    """
    w = obj.check_shape(W)
    _, _, c, g = _gram_pair(obj, w)
    # c and g are symmetric, so trace(c g) = sum(c * g)
    return float(2.0 * np.trace(c) - np.sum(c * g))


def h_gradient(obj: Objective, W: Matrix) -> Matrix:
    """
    Gradient 4AW - 2AW(W^T B W) - 2BW(W^T A W).

    Raises:
        ShapeMismatch: If W is not d x k
    """
    w = obj.check_shape(W)
    aw, bw, c, g = _gram_pair(obj, w)
    return 4.0 * aw - 2.0 * aw @ g - 2.0 * bw @ c


def _check_lambda(Lambda: Matrix) -> np.ndarray:
    lam = as_matrix(Lambda, "Lambda")
    require_square(lam, "Lambda")
    diagonal = np.diag(lam)
    if max_abs(lam - np.diag(diagonal)) > 0.0:
        raise BadLambda("Lambda must be diagonal")
    if np.any(diagonal <= 0):
        raise BadLambda("Lambda must have strictly positive diagonal entries")
    return diagonal


def perspective_value(Lambda: Matrix, M: Matrix) -> float:
    """
    Matrix perspective functional trace(Lambda M (2I - M)).

    Raises:
        BadLambda: If Lambda is not diagonal with positive entries
        ShapeMismatch: If M does not match Lambda
        NotSymmetric: If M is not symmetric
        NotPSD: If M is not positive semi-definite
    """
    weights = _check_lambda(Lambda)
    m = as_matrix(M, "M")
    if m.shape != (weights.size, weights.size):
        raise ShapeMismatch(f"M must be {weights.size} x {weights.size}, got {m.shape}")
    check_symmetric(m, "M")
    lam_min = float(sym_eig(m).eigenvalues[-1])
    if lam_min < -PSD_TOL * max(1.0, max_abs(m)):
        raise NotPSD(f"M is not positive semi-definite (min eigenvalue {lam_min:.3e})", lam_min)

    product = m @ (2.0 * np.eye(weights.size) - m)
    return float(np.sum(weights * np.diag(product)))


def perspective_radius(Lambda: Matrix) -> float:
    """R* = 1 + sqrt(1 + (p - 1) lambda_max / lambda_min); beyond it the perspective is <= 0."""
    weights = _check_lambda(Lambda)
    p = weights.size
    return float(1.0 + np.sqrt(1.0 + (p - 1) * weights.max() / weights.min()))


def b_orthonormalize(obj: Objective, W: Matrix) -> Matrix:
    """
    Map W to W (W^T B W)^{-1/2}.

    The result has B-orthonormal columns spanning col(W), and for A PSD its
    objective value is at least h(W).

    Raises:
        ShapeMismatch: If W is not d x k
        RankDeficient: If W^T B W is singular (min eigenvalue <= 1e-10 * max)
    """
    w = obj.check_shape(W)
    gram = w.T @ (obj.problem.B @ w)
    eig = sym_eig(0.5 * (gram + gram.T))
    sigma = eig.eigenvalues
    if not sigma[0] > 0 or not sigma[-1] > RANK_TOL * sigma[0]:
        raise RankDeficient(
            f"W does not have full column rank in the B inner product "
            f"(eigenvalues of W^T B W {sigma[0]:.3e} .. {sigma[-1]:.3e})"
        )
    v = eig.eigenvectors
    inv_half = (v * sigma ** -0.5) @ v.T
    return w @ (0.5 * (inv_half + inv_half.T))
