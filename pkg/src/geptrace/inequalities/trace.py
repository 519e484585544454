"""
Trace inequalities and the matrix perspective bound.

Shared-frame equality cases are verified through the decomposition of a
generic combination (X + Y, or A + cM) rather than by comparing individual
singular vectors, which are not well defined under repeated values.
"""

import math
from dataclasses import replace
from typing import List, Tuple

import numpy as np

from ..errors import NotPSD, ShapeMismatch
from ..gep.problem import GepProblem
from ..linalg.matcore import (
    Matrix,
    Vector,
    as_matrix,
    check_symmetric,
    max_abs,
    op_norm,
    svd,
    sym_eig,
)
from ..objective.varobj import Objective, h_value, perspective_radius, perspective_value
from ..utils.logging import get_logger
from .report import EQ_TOL, INEQ_TOL, CheckReport, EqualityCase, identity_report, inequality_report

logger = get_logger(__name__)

PSD_TOL = 1e-10
FRAME_TOL = 1e-7
DIAG_TOL = 1e-6
SVD_EIG_TOL = 1e-7
SPECTRUM_TOL = 1e-8
UNIT_TOL = 1e-10
PIVOT_TOL = 1e-9
SWEEP_WEIGHTS = (1.0, 0.5, 1.0 / 3.0)


def _require_psd(a: Matrix, name: str) -> Vector:
    eigenvalues = sym_eig(a).eigenvalues
    lam_min = float(eigenvalues[-1])
    if lam_min < -PSD_TOL * max(1.0, max_abs(a)):
        raise NotPSD(f"{name} is not positive semi-definite (min eigenvalue {lam_min:.3e})", lam_min)
    return eigenvalues


def von_neumann(
    X: Matrix,
    Y: Matrix,
    ineq_tol: float = INEQ_TOL,
    eq_tol: float = EQ_TOL,
) -> CheckReport:
    """
    <X, Y> <= sum_j sigma_j(X) sigma_j(Y).

    At equality X and Y must share an ordered singular frame: both are
    rebuilt from the singular vectors of X + Y and their own singular values.

    Raises:
        ShapeMismatch: If X and Y differ in shape
    """
    x = as_matrix(X, "X")
    y = as_matrix(Y, "Y")
    if x.shape != y.shape:
        raise ShapeMismatch(f"X {x.shape} and Y {y.shape} must have the same shape")

    sx = svd(x).singulars
    sy = svd(y).singulars
    report = inequality_report(
        "von-neumann", np.sum(x * y), np.sum(sx * sy), ineq_tol, eq_tol
    )
    if report.equality_case is not EqualityCase.EQUALITY:
        return report

    frame = svd(x + y)
    u, v = frame.left, frame.right
    error = max(
        max_abs(x - (u * sx) @ v.T) / max(1.0, max_abs(x)),
        max_abs(y - (u * sy) @ v.T) / max(1.0, max_abs(y)),
    )
    return report.with_equality(error <= FRAME_TOL, frame_error=error)


def _shared_eigenframe(a: Matrix, m: Matrix) -> Tuple[bool, float]:
    scale = 1.0 + max(max_abs(a), max_abs(m))
    worst = float("inf")
    for c in SWEEP_WEIGHTS:
        u = sym_eig(a + c * m).eigenvectors
        da = u.T @ a @ u
        dm = u.T @ m @ u
        off = max(max_abs(da - np.diag(np.diag(da))), max_abs(dm - np.diag(np.diag(dm))))
        ordered = bool(
            np.all(np.diff(np.diag(da)) <= DIAG_TOL * scale)
            and np.all(np.diff(np.diag(dm)) <= DIAG_TOL * scale)
        )
        worst = min(worst, off)
        if off <= DIAG_TOL * scale and ordered:
            return True, off
        logger.debug(f"psd_von_neumann: frame of A + {c:.3g} M rejected (off-diagonal {off:.3e})")
    return False, worst


def psd_von_neumann(
    A: Matrix,
    M: Matrix,
    ineq_tol: float = INEQ_TOL,
    eq_tol: float = EQ_TOL,
) -> CheckReport:
    """
    <A, M> <= sum_i lambda_i(A) mu_i(M), both spectra descending, A PSD.

    Equality requires simultaneous diagonalization in matched order, checked
    with the eigenvectors of A + cM for c in (1, 1/2, 1/3).

    Raises:
        NotSymmetric: If A or M is not symmetric
        NotPSD: If A is not positive semi-definite
        ShapeMismatch: If A and M differ in shape
    """
    a = as_matrix(A, "A")
    m = as_matrix(M, "M")
    if a.shape != m.shape:
        raise ShapeMismatch(f"A {a.shape} and M {m.shape} must have the same shape")
    check_symmetric(a, "A")
    check_symmetric(m, "M")
    lam = _require_psd(a, "A")
    mu = sym_eig(m).eigenvalues

    report = inequality_report("psd-von-neumann", np.sum(a * m), np.sum(lam * mu), ineq_tol, eq_tol)
    if report.equality_case is not EqualityCase.EQUALITY:
        return report
    shared, off = _shared_eigenframe(a, m)
    return report.with_equality(shared, off_diagonal=off)


def psd_svd_is_eig(A: Matrix) -> CheckReport:
    """
    For symmetric PSD A, the SVD is an eigendecomposition.

    For every singular value above 1e-8 (relative to max(1, sigma_1)), the
    left and right vectors agree and A u_i = sigma_i u_i.

    Raises:
        NotSymmetric: If A is not symmetric
        NotPSD: If A is not positive semi-definite
    """
    a = as_matrix(A, "A")
    check_symmetric(a, "A")
    _require_psd(a, "A")

    decomposition = svd(a)
    s = decomposition.singulars
    scale = 1.0 + max_abs(a)
    cutoff = 1e-8 * max(1.0, float(s[0]))
    worst = 0.0
    for i in np.flatnonzero(s > cutoff):
        u = decomposition.left[:, i]
        v = decomposition.right[:, i]
        sign = 1.0 if float(u @ v) >= 0 else -1.0
        vector_gap = float(np.linalg.norm(u - sign * v))
        eig_residual = float(np.linalg.norm(a @ u - s[i] * u)) / scale
        worst = max(worst, vector_gap, eig_residual)
    return identity_report("svd-is-eig", worst, SVD_EIG_TOL, singulars=np.array(s))


def _m_matrix(w: Matrix) -> Matrix:
    gram = w @ w.T
    m = gram @ (2.0 * np.eye(w.shape[0]) - gram)
    return 0.5 * (m + m.T)


def _m_formula(w: Matrix) -> Vector:
    d, k = w.shape
    s = svd(w).singulars
    values = np.zeros(d)
    values[: s.size] = 2.0 * s ** 2 - s ** 4
    return np.sort(values)[::-1]


def _m_spectrum_check(w: Matrix) -> Tuple[Vector, Vector, float, float]:
    direct = sym_eig(_m_matrix(w)).eigenvalues
    formula = _m_formula(w)
    scale = max(1.0, float(svd(w).singulars[0]) ** 4)
    mismatch = float(np.max(np.abs(direct - formula))) / scale
    excess = max(0.0, float(direct[0]) - 1.0) / scale
    return direct, formula, mismatch, excess


def m_spectrum(W: Matrix) -> Vector:
    """
    Eigenvalues (descending) of M = W W^T (2I - W W^T) for a d x k matrix W.

    The direct spectrum is compared with 2 d_i^2 - d_i^4 from the singular
    values of W; a mismatch or a value above 1 is logged as a warning.
    """
    w = as_matrix(W, "W")
    direct, _, mismatch, excess = _m_spectrum_check(w)
    if mismatch > SPECTRUM_TOL:
        logger.warning(f"spectrum of W W^T (2I - W W^T) differs from 2d^2 - d^4 by {mismatch:.3e}")
    if excess > UNIT_TOL:
        logger.warning(f"spectrum of W W^T (2I - W W^T) exceeds 1 by {excess:.3e}")
    return direct


def m_spectrum_report(W: Matrix) -> CheckReport:
    """
    The direct spectrum of M matches 2 d_i^2 - d_i^4 (d_i singular values of
    W, padded with zeros) and never exceeds 1.
    """
    w = as_matrix(W, "W")
    direct, formula, mismatch, excess = _m_spectrum_check(w)
    report = identity_report("m-spectrum", mismatch, SPECTRUM_TOL, direct=direct, formula=formula)
    if excess > UNIT_TOL:
        return replace(report, holds=False, detail=f"largest eigenvalue exceeds 1 by {excess:.3e}")
    return report


def trace_chain(
    A: Matrix,
    W: Matrix,
    k: int,
    ineq_tol: float = INEQ_TOL,
    eq_tol: float = EQ_TOL,
) -> List[CheckReport]:
    """
    The trace-inequality chain for B = I.

    Reports the pivot identity h(W; A, I) = <A, M> with M = W W^T (2I - W W^T),
    then <A, M> <= sum lambda_i mu_i, then sum lambda_i mu_i <= lambda_1 + ... + lambda_k.

    Raises:
        NotPSD: If A is not positive semi-definite
        ShapeMismatch: If W is not d x k
    """
    a = as_matrix(A, "A")
    w = as_matrix(W, "W")
    check_symmetric(a, "A")
    d = a.shape[0]
    if a.shape[1] != d or w.shape != (d, k):
        raise ShapeMismatch(f"W must be {d} x {k} for A {a.shape}, got {w.shape}")
    lam = _require_psd(a, "A")

    m = _m_matrix(w)
    mu = sym_eig(m).eigenvalues
    inner = float(np.sum(a * m))

    h = h_value(Objective(GepProblem(a, np.eye(d)), k), w)
    s_max = float(svd(w).singulars[0])
    pivot_scale = max(1.0, max_abs(a) * max(1.0, s_max) ** 4)

    return [
        identity_report("chain pivot", abs(h - inner) / pivot_scale, PIVOT_TOL, h=h, inner=inner),
        inequality_report("chain von-neumann", inner, np.sum(lam * mu), ineq_tol, eq_tol),
        inequality_report("chain top-k", np.sum(lam * mu), np.sum(lam[:k]), ineq_tol, eq_tol),
    ]


def perspective_bound(
    Lambda: Matrix,
    M: Matrix,
    ineq_tol: float = INEQ_TOL,
    eq_tol: float = EQ_TOL,
) -> List[CheckReport]:
    """
    trace(Lambda M (2I - M)) <= trace(Lambda), with equality only at M = I.

    trace(Lambda) - value = trace(Lambda (I - M)^2) >= lambda_min ||I - M||_F^2,
    so at equality M must sit within sqrt(residual / lambda_min) of I. When
    ||M||_op >= R*, a second report asserts the value is <= 0.

    Raises:
        BadLambda: If Lambda is not diagonal with positive entries
        NotPSD: If M is not positive semi-definite
    """
    value = perspective_value(Lambda, M)
    weights = np.diag(np.asarray(Lambda, dtype=np.float64))
    m = as_matrix(M, "M")

    report = inequality_report("perspective", value, float(np.sum(weights)), ineq_tol, eq_tol)
    distance = max_abs(m - np.eye(m.shape[0]))
    if report.equality_case is EqualityCase.EQUALITY:
        slack = abs(report.residual) + report.eq_tol
        tolerance = max(1e-7, math.sqrt(slack / float(weights.min())))
        report = report.with_equality(distance <= tolerance, distance=distance)

    reports = [report]
    radius = perspective_radius(Lambda)
    norm = op_norm(m)
    if norm >= radius:
        reports.append(
            inequality_report("perspective radius", value, 0.0, ineq_tol, eq_tol, op_norm=norm, radius=radius)
        )
    return reports
