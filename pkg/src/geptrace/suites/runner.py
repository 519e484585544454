"""Suite registry and the trial runner."""

from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Dict, List, Sequence, Type, Union

from ..errors import SuiteInputError
from ..gep.problem import GAP_TOL
from ..inequalities.report import EQ_TOL, INEQ_TOL
from ..utils.logging import get_logger
from .base import BaseSuite, SuiteInputs, SuiteRun
from .spectral import ConstrainedSuite, HaemersSuite, ImprovementSuite, RayleighSuite, UnconstrainedSuite
from .trace import (
    MSpectrumSuite,
    PerspectiveSuite,
    PsdVonNeumannSuite,
    SvdEigSuite,
    TraceChainSuite,
    VonNeumannSuite,
)

logger = get_logger(__name__)

SUITE_CLASSES: Dict[str, Type[BaseSuite]] = {
    "rayleigh": RayleighSuite,
    "haemers": HaemersSuite,
    "constrained": ConstrainedSuite,
    "unconstrained": UnconstrainedSuite,
    "improve": ImprovementSuite,
    "vonneumann": VonNeumannSuite,
    "psd-vn": PsdVonNeumannSuite,
    "svd-eig": SvdEigSuite,
    "m-spectrum": MSpectrumSuite,
    "chain": TraceChainSuite,
    "perspective": PerspectiveSuite,
}


def resolve_suites(selector: Union[str, Sequence[str]]) -> List[str]:
    """
    Expand a selector ("all", one name, or a comma-separated list) into suite names.

    Raises:
        SuiteInputError: If a name is unknown
    """
    names = selector.split(",") if isinstance(selector, str) else list(selector)
    names = [name.strip() for name in names if name.strip()]
    if not names or "all" in names:
        return list(SUITE_CLASSES)
    unknown = [name for name in names if name not in SUITE_CLASSES]
    if unknown:
        raise SuiteInputError(
            f"unknown suite(s): {', '.join(unknown)} "
            f"(available: all, {', '.join(SUITE_CLASSES)})"
        )
    # Keep registry order and drop duplicates
    return [name for name in SUITE_CLASSES if name in names]


def create_suites(
    names: Sequence[str],
    ineq_tol: float = INEQ_TOL,
    eq_tol: float = EQ_TOL,
    gap_tol: float = GAP_TOL,
) -> List[BaseSuite]:
    return [SUITE_CLASSES[name](ineq_tol, eq_tol, gap_tol) for name in resolve_suites(list(names))]


def _order(runs: List[SuiteRun], suites: List[BaseSuite]) -> List[SuiteRun]:
    rank = {suite.name: i for i, suite in enumerate(suites)}
    return sorted(runs, key=lambda run: (rank[run.suite], run.trial))


def run_suites(
    suites: List[BaseSuite],
    trials: int,
    seed: int = 0,
    workers: int = 1,
) -> List[SuiteRun]:
    """
    Run every suite for trials 0..trials-1.

    Trial t of each suite draws from a generator seeded with seed + t, so the
    results do not depend on the number of workers. Runs come back ordered by
    (suite, trial).
    """
    jobs = [(suite, trial) for suite in suites for trial in range(trials)]
    logger.debug(f"running {len(jobs)} trial(s) across {len(suites)} suite(s) with {workers} worker(s)")

    if workers <= 1:
        return [suite.run_trial(seed, trial) for suite, trial in jobs]

    runs = []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_job = {
            executor.submit(suite.run_trial, seed, trial): (suite.name, trial)
            for suite, trial in jobs
        }
        for future in as_completed(future_to_job):
            runs.append(future.result())
    return _order(runs, suites)


def run_suites_on_inputs(
    suites: List[BaseSuite],
    inputs: SuiteInputs,
    seed: int = 0,
    skip_missing: bool = False,
) -> List[SuiteRun]:
    """
    Run every suite on the supplied matrices.

    With skip_missing, suites whose required matrices are absent are skipped
    (used when the selector is "all"); otherwise SuiteInputError propagates.
    """
    runs = []
    for suite in suites:
        try:
            runs.append(suite.run_inputs(inputs, seed))
        except SuiteInputError as e:
            if not skip_missing:
                raise
            logger.info(f"skipping {suite.name}: {e}")
    return runs
