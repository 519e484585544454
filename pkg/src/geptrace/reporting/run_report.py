"""Report for a single solve: instance, oracle spectrum, optimizer outcome and checks."""

import time
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..errors import NotPSD, RankDeficient
from ..gep.problem import GAP_TOL, GepProblem, solve_dense, top_k
from ..inequalities.report import EQ_TOL, INEQ_TOL
from ..inequalities.spectral import constrained_bound, improvement_bound, unconstrained_bound
from ..linalg.matcore import max_abs, principal_angles
from ..objective.varobj import Objective, b_orthonormalize
from ..optimize.ascent import AscentConfig, ascend
from ..utils.logging import get_logger
from .json_output import write_json

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_NOT_CONVERGED = 2


class SpectrumSummary(BaseModel):
    """Oracle spectrum figures for the instance."""
    lambda_max: float
    lambda_min: float
    top_k_sum: float
    gap_k: Optional[float] = Field(None, description="lambda_k - lambda_{k+1}; null when k = d")
    unique_top_k: bool
    b_condition: float


class InstanceSummary(BaseModel):
    """What was solved."""
    d: int
    k: int
    seed: int
    a_source: Optional[str] = None
    b_source: Optional[str] = None
    spectrum: SpectrumSummary


class OptimizerSummary(BaseModel):
    """Outcome of gradient ascent."""
    terminal_h: float
    gap_to_oracle: float
    principal_angles: Optional[List[float]] = None
    b_orthonormality_error: float
    iterations: int
    converged: bool
    final_grad_norm: float
    step_size: float
    schedule: str
    wall_time_s: float


class RunReport(BaseModel):
    """Full solve report; exit_status follows the command-line exit code contract."""
    instance: InstanceSummary
    oracle_eigenvalues: List[float]
    optimizer: OptimizerSummary
    checks: List[Dict[str, Any]] = Field(default_factory=list)
    exit_status: int = EXIT_OK

    def to_json(self, output_path=None) -> str:
        return write_json(self.model_dump(), output_path)


def _iterate_checks(
    p: GepProblem,
    k: int,
    w: np.ndarray,
    sol,
    ineq_tol: float,
    eq_tol: float,
    gap_tol: float,
) -> List[Dict[str, Any]]:
    checks = []
    obj = Objective(p, k)
    try:
        p.require_psd_a()
        checks.append(unconstrained_bound(p, w, k, sol, eq_tol, gap_tol))
        checks.append(improvement_bound(obj, w, ineq_tol))
    except NotPSD:
        logger.info("A is not positive semi-definite; skipping the unconstrained checks")
    except RankDeficient:
        logger.info("returned iterate is rank deficient; skipping the improvement check")
    try:
        normalized = b_orthonormalize(obj, w)
        checks.append(constrained_bound(p, normalized, k, sol, ineq_tol, eq_tol, gap_tol))
    except RankDeficient:
        logger.info("returned iterate is rank deficient; skipping the constrained check")
    return [report.to_dict(include_witnesses=False) for report in checks]


def build_run_report(
    p: GepProblem,
    k: int,
    cfg: Optional[AscentConfig] = None,
    a_source: Optional[str] = None,
    b_source: Optional[str] = None,
    ineq_tol: float = INEQ_TOL,
    eq_tol: float = EQ_TOL,
    gap_tol: float = GAP_TOL,
) -> RunReport:
    """
    Solve (A, B) densely and by gradient ascent, and check the returned iterate.

    Raises:
        BadK: If k is outside 1..d
        Diverged: If gradient ascent diverges
    """
    cfg = cfg or AscentConfig()
    obj = Objective(p, k)
    sol = solve_dense(p)
    oracle = top_k(sol, k, gap_tol)

    started = time.perf_counter()
    result = ascend(obj, cfg)
    elapsed = time.perf_counter() - started

    try:
        angles = [float(a) for a in principal_angles(result.W, oracle.basis)]
    except RankDeficient:
        angles = None

    lam = sol.eigenvalues
    spectrum = SpectrumSummary(
        lambda_max=float(lam[0]),
        lambda_min=float(lam[-1]),
        top_k_sum=sol.top_sum(k),
        gap_k=None if k >= p.d else sol.gap_at(k),
        unique_top_k=oracle.unique,
        b_condition=p.b_condition,
    )
    optimizer = OptimizerSummary(
        terminal_h=result.final_h,
        gap_to_oracle=sol.top_sum(k) - result.final_h,
        principal_angles=angles,
        b_orthonormality_error=max_abs(result.W.T @ p.B @ result.W - np.eye(k)),
        iterations=result.iterations,
        converged=result.converged,
        final_grad_norm=result.final_grad_norm,
        step_size=result.step_size,
        schedule=cfg.schedule,
        wall_time_s=elapsed,
    )
    checks = _iterate_checks(p, k, result.W, sol, ineq_tol, eq_tol, gap_tol)

    if not result.converged:
        status = EXIT_NOT_CONVERGED
    elif all(check["passed"] for check in checks):
        status = EXIT_OK
    else:
        status = EXIT_FAILURE

    return RunReport(
        instance=InstanceSummary(
            d=p.d, k=k, seed=cfg.seed, a_source=a_source, b_source=b_source, spectrum=spectrum
        ),
        oracle_eigenvalues=[float(v) for v in lam],
        optimizer=optimizer,
        checks=checks,
        exit_status=status,
    )
