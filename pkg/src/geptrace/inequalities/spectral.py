"""
Checkers for the eigenvalue inequalities behind the top-k characterizations.

Rayleigh's principle, Haemers interlacing, the constrained trace bound
trace(W^T A W) <= sum of the k largest generalized eigenvalues, its
unconstrained counterpart h(W) <= the same sum, and the improvement of h
under B-orthonormalization.
"""

import math
from typing import List, Literal, Optional, Tuple

import numpy as np

from ..errors import (
    BadK,
    HypothesisViolated,
    NotBOrthonormal,
    NotOrthonormal,
    RankDeficient,
    ShapeMismatch,
    ZeroVector,
)
from ..gep.problem import GAP_TOL, GepProblem, GepSolution, solve_dense, top_k_distance
from ..linalg.matcore import (
    Matrix,
    SymEig,
    Vector,
    as_matrix,
    as_vector,
    check_symmetric,
    containment_angle,
    max_abs,
    orthonormal_basis,
    svd,
    sym_eig,
)
from ..objective.varobj import Objective, b_orthonormalize, h_value
from ..utils.logging import get_logger
from .report import EQ_TOL, INEQ_TOL, CheckReport, EqualityCase, identity_report, inequality_report

logger = get_logger(__name__)

HYPOTHESIS_TOL = 1e-8
ORTHONORMAL_TOL = 1e-8
EIGVEC_TOL = 1e-7
ANGLE_TOL = 1e-5
EXACT_ANGLE = 1e-7
UNCONSTRAINED_REL_TOL = 1e-6

RayleighCase = Literal["in_top", "orth_top"]


def _angle_tolerance(residual: float, eq_tol: float, gap: float) -> float:
    # A residual delta moves the subspace by at most about sqrt(delta / gap)
    if not gap > 0:
        return ANGLE_TOL
    if math.isinf(gap):
        return ANGLE_TOL
    return max(ANGLE_TOL, math.sqrt((abs(residual) + eq_tol) / gap))


def _boundary_gap(sol: GepSolution, k: int, gap_tol: float) -> float:
    """Smallest separation between the top-k cluster boundaries and the rest."""
    lam = sol.eigenvalues
    lam_k = lam[k - 1]
    above = int(np.sum(lam > lam_k + gap_tol))
    cluster = int(np.sum(lam >= lam_k - gap_tol))
    gaps = []
    if above > 0:
        gaps.append(float(lam[above - 1] - lam[above]))
    if cluster < sol.d:
        gaps.append(float(lam[cluster - 1] - lam[cluster]))
    return min(gaps) if gaps else float("inf")


def rayleigh_bounds(
    eig: SymEig,
    u: Vector,
    i: int,
    case: RayleighCase = "in_top",
    ineq_tol: float = INEQ_TOL,
    eq_tol: float = EQ_TOL,
) -> Tuple[CheckReport, Optional[CheckReport]]:
    """
    Rayleigh's principle for the i-th eigenvalue (1-based).

    With case="in_top", u must lie in span(u_1..u_i) and the quotient is at
    least lambda_i; with case="orth_top", u must be orthogonal to
    span(u_1..u_{i-1}) and the quotient is at most lambda_i. At equality u
    must be a lambda_i-eigenvector; that follow-up is the second report.

    Raises:
        ZeroVector: If u is zero
        HypothesisViolated: If u does not satisfy the stated containment
        BadK: If i is outside 1..d
    """
    n = eig.dim
    vector = as_vector(u, "u")
    if vector.shape[0] != n:
        raise ShapeMismatch(f"u has length {vector.shape[0]}, expected {n}")
    if not 1 <= i <= n:
        raise BadK(f"index i must be in 1..{n}, got {i}")
    norm = float(np.linalg.norm(vector))
    if norm == 0.0:
        raise ZeroVector("Rayleigh quotient of the zero vector is undefined")
    unit = vector / norm

    frame = eig.eigenvectors
    coefficients = frame.T @ unit
    if case == "in_top":
        violation = float(np.linalg.norm(unit - frame[:, :i] @ coefficients[:i]))
    elif case == "orth_top":
        violation = float(np.linalg.norm(coefficients[: i - 1])) if i > 1 else 0.0
    else:
        raise ValueError(f"unknown Rayleigh case '{case}'")
    if violation > HYPOTHESIS_TOL:
        raise HypothesisViolated(
            f"u violates the '{case}' hypothesis for i={i} (projection residual {violation:.3e})",
            residual=violation,
        )

    lam_i = float(eig.eigenvalues[i - 1])
    quotient = float(np.sum(eig.eigenvalues * coefficients ** 2) / np.sum(coefficients ** 2))
    if case == "in_top":
        report = inequality_report(f"rayleigh[{i}] lower", lam_i, quotient, ineq_tol, eq_tol)
    else:
        report = inequality_report(f"rayleigh[{i}] upper", quotient, lam_i, ineq_tol, eq_tol)

    if report.equality_case is not EqualityCase.EQUALITY:
        return report, None

    a = eig.reconstruct()
    eig_residual = float(np.linalg.norm(a @ unit - lam_i * unit))
    threshold = EIGVEC_TOL * (1.0 + max_abs(a))
    follow_up = identity_report(f"rayleigh[{i}] eigenvector", eig_residual, threshold)
    return report.with_equality(follow_up.holds), follow_up


def haemers_interlace(
    A: Matrix,
    S: Matrix,
    ineq_tol: float = INEQ_TOL,
    eq_tol: float = EQ_TOL,
) -> List[CheckReport]:
    """
    Interlacing mu_i <= lambda_i for the compression C = S^T A S.

    When every mu_i equals lambda_i, each S v_i must be a mu_i-eigenvector
    of A; that propagation check is appended as a final report.

    Raises:
        NotOrthonormal: If S^T S differs from I by more than 1e-8
        NotSymmetric: If A is not symmetric
    """
    a = as_matrix(A, "A")
    s = as_matrix(S, "S")
    check_symmetric(a, "A")
    d = a.shape[0]
    if a.shape[1] != d or s.shape[0] != d or s.shape[1] > d:
        raise ShapeMismatch(f"S {s.shape} does not fit A {a.shape}")
    k = s.shape[1]
    deviation = max_abs(s.T @ s - np.eye(k))
    if deviation > ORTHONORMAL_TOL:
        raise NotOrthonormal(f"S^T S differs from I by {deviation:.3e}", deviation=deviation)

    lam = sym_eig(a).eigenvalues
    compressed = s.T @ a @ s
    c_eig = sym_eig(0.5 * (compressed + compressed.T))
    mu = c_eig.eigenvalues

    reports = [
        inequality_report(f"haemers[{i + 1}]", mu[i], lam[i], ineq_tol, eq_tol)
        for i in range(k)
    ]
    if not all(r.equality_case is EqualityCase.EQUALITY for r in reports):
        return reports

    lifted = s @ c_eig.eigenvectors
    residual = max(
        float(np.linalg.norm(a @ lifted[:, i] - mu[i] * lifted[:, i])) for i in range(k)
    )
    follow_up = identity_report(
        "haemers eigenvector propagation", residual, EIGVEC_TOL * (1.0 + max_abs(a))
    )
    return [r.with_equality(follow_up.holds) for r in reports] + [follow_up]


def _solution(p: GepProblem, solution: Optional[GepSolution]) -> GepSolution:
    return solution if solution is not None else solve_dense(p)


def constrained_bound(
    p: GepProblem,
    W: Matrix,
    k: int,
    solution: Optional[GepSolution] = None,
    ineq_tol: float = INEQ_TOL,
    eq_tol: float = EQ_TOL,
    gap_tol: float = GAP_TOL,
) -> CheckReport:
    """
    trace(W^T A W) <= lambda_1 + ... + lambda_k for B-orthonormal W.

    Equality holds exactly when col(W) is a top-k subspace: at equality the
    column space is compared with the oracle, and a W already spanning a
    top-k subspace (angle <= 1e-7) must produce equality.

    Raises:
        NotBOrthonormal: If W^T B W differs from I by more than 1e-8
        ShapeMismatch: If W is not d x k
    """
    w = as_matrix(W, "W")
    if w.shape != (p.d, k):
        raise ShapeMismatch(f"W must be {p.d} x {k}, got {w.shape}")
    deviation = max_abs(w.T @ p.B @ w - np.eye(k))
    if deviation > ORTHONORMAL_TOL:
        raise NotBOrthonormal(f"W^T B W differs from I by {deviation:.3e}", deviation=deviation)

    sol = _solution(p, solution)
    lhs = float(np.trace(w.T @ p.A @ w))
    report = inequality_report("constrained", lhs, sol.top_sum(k), ineq_tol, eq_tol)

    distance = top_k_distance(sol, w, k, gap_tol=gap_tol)
    if distance <= EXACT_ANGLE:
        return report.with_equality(report.equality_case is EqualityCase.EQUALITY, distance=distance)
    if report.equality_case is EqualityCase.EQUALITY:
        tolerance = _angle_tolerance(report.residual, report.eq_tol, _boundary_gap(sol, k, gap_tol))
        return report.with_equality(distance <= tolerance, distance=distance)
    return report.with_equality(None, distance=distance)


def _range_basis(w: np.ndarray) -> np.ndarray:
    decomposition = svd(w)
    s = decomposition.singulars
    rank = int(np.sum(s > 1e-10 * s[0])) if s[0] > 0 else 0
    return decomposition.left[:, :rank]


def unconstrained_bound(
    p: GepProblem,
    W: Matrix,
    k: int,
    solution: Optional[GepSolution] = None,
    eq_tol: float = EQ_TOL,
    gap_tol: float = GAP_TOL,
) -> CheckReport:
    """
    h(W; A, B) <= lambda_1 + ... + lambda_k for any d x k W, A PSD.

    The bound is judged at tolerance 1e-6 * sum(|lambda|). At equality the
    maximizer characterization is verified: with lambda_k > 0, col(W) is a
    top-k subspace and W is B-orthonormal; with lambda_k = 0, col(W) only
    has to contain the eigenvectors of the positive eigenvalues.

    Raises:
        NotPSD: If A is not positive semi-definite
        ShapeMismatch: If W is not d x k
    """
    obj = Objective(p, k)
    w = obj.check_shape(W)
    p.require_psd_a()
    sol = _solution(p, solution)

    total = float(np.sum(np.abs(sol.eigenvalues)))
    value = h_value(obj, w)
    rhs = sol.top_sum(k)
    tolerance = max(UNCONSTRAINED_REL_TOL * total, INEQ_TOL * max(1.0, abs(value), abs(rhs)))
    report = inequality_report("unconstrained", value, rhs, eq_tol=eq_tol, tol=tolerance)
    if report.equality_case is not EqualityCase.EQUALITY:
        return report

    lam_k = float(sol.eigenvalues[k - 1])
    slack = abs(report.residual) + report.eq_tol
    if lam_k > gap_tol:
        try:
            distance = top_k_distance(sol, w, k, gap_tol=gap_tol)
        except RankDeficient:
            return report.with_equality(False, rank_deficient=True)
        deviation = max_abs(w.T @ p.B @ w - np.eye(k))
        stiffness = min(lam_k, _boundary_gap(sol, k, gap_tol))
        tolerance = _angle_tolerance(report.residual, report.eq_tol, stiffness)
        orth_tolerance = max(1e-6, math.sqrt(slack / lam_k))
        verified = distance <= tolerance and deviation <= orth_tolerance
        return report.with_equality(verified, distance=distance, b_deviation=deviation)

    positive = int(np.sum(sol.eigenvalues > gap_tol))
    logger.debug(f"unconstrained equality with lambda_k = 0: checking containment of {positive} positive eigenvectors")
    if positive == 0:
        return report.with_equality(True)
    basis = _range_basis(w)
    if basis.shape[1] < positive:
        return report.with_equality(False, rank=basis.shape[1])
    positive_span = orthonormal_basis(sol.eigenvectors[:, :positive], "positive eigenvectors")
    distance = containment_angle(positive_span, basis)
    tolerance = _angle_tolerance(report.residual, report.eq_tol, float(sol.eigenvalues[positive - 1]))
    return report.with_equality(distance <= tolerance, distance=distance)


def improvement_bound(obj: Objective, W: Matrix, ineq_tol: float = INEQ_TOL) -> CheckReport:
    """
    h(W) <= h(W (W^T B W)^{-1/2}) for A PSD.

    Raises:
        NotPSD: If A is not positive semi-definite
        RankDeficient: If W^T B W is singular
    """
    w = obj.check_shape(W)
    obj.problem.require_psd_a()
    improved = b_orthonormalize(obj, w)
    return inequality_report(
        "improvement", h_value(obj, w), h_value(obj, improved), ineq_tol=ineq_tol
    )
