"""Base class for check suites."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..errors import SuiteInputError
from ..gep.problem import GAP_TOL, GepProblem
from ..inequalities.report import EQ_TOL, INEQ_TOL, CheckReport
from ..linalg.matcore import Matrix
from ..utils.logging import LoggerMixin


@dataclass(frozen=True, eq=False)
class SuiteInputs:
    """Matrices supplied on the command line for file-driven checks."""

    A: Optional[Matrix] = None
    B: Optional[Matrix] = None
    W: Optional[Matrix] = None
    k: Optional[int] = None
    sources: Dict[str, str] = field(default_factory=dict)

    def require(self, suite: str, *names: str) -> List[Matrix]:
        """
        Return the named matrices, raising SuiteInputError if any is missing.
        """
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            flags = ", ".join(f"--{name.lower()}" for name in missing)
            raise SuiteInputError(f"suite '{suite}' needs {flags}")
        return [getattr(self, name) for name in names]

    def resolve_k(self, suite: str, d: int) -> int:
        if self.k is not None:
            return self.k
        if self.W is not None:
            return int(self.W.shape[1])
        raise SuiteInputError(f"suite '{suite}' needs --k or --w")


@dataclass(frozen=True, eq=False)
class SuiteRun:
    """Reports of one suite for one trial (trial -1 for file inputs)."""

    suite: str
    trial: int
    reports: List[CheckReport]


class BaseSuite(ABC, LoggerMixin):
    """
    Abstract base class for check suites.

    Each suite must implement:
    - random_trial(): checks on a seeded random instance
    - from_inputs(): checks on user-supplied matrices
    """

    def __init__(
        self,
        ineq_tol: float = INEQ_TOL,
        eq_tol: float = EQ_TOL,
        gap_tol: float = GAP_TOL,
    ):
        self.ineq_tol = ineq_tol
        self.eq_tol = eq_tol
        self.gap_tol = gap_tol

    @property
    @abstractmethod
    def name(self) -> str:
        """Selector used on the command line."""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    @abstractmethod
    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        """
        Run the suite's checks on instances drawn from rng.

        Args:
            rng: Generator seeded with seed + trial
            trial: Trial index

        Returns:
            List of check reports
        """
        pass

    @abstractmethod
    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        """
        Run the suite's checks on supplied matrices.

        Raises:
            SuiteInputError: If a required matrix is missing
        """
        pass

    def run_trial(self, seed: int, trial: int) -> SuiteRun:
        rng = np.random.default_rng(seed + trial)
        reports = self.random_trial(rng, trial)
        failed = sum(1 for r in reports if not r.passed)
        if failed:
            self.logger.warning(f"{self.name} trial {trial}: {failed} check(s) failed")
        else:
            self.logger.debug(f"{self.name} trial {trial}: {len(reports)} check(s) passed")
        return SuiteRun(self.name, trial, reports)

    def run_inputs(self, inputs: SuiteInputs, seed: int) -> SuiteRun:
        reports = self.from_inputs(inputs, np.random.default_rng(seed))
        return SuiteRun(self.name, -1, reports)

    def problem(self, inputs: SuiteInputs) -> GepProblem:
        a, b = inputs.require(self.name, "A", "B")
        return GepProblem(a, b)

    @staticmethod
    def dimension(rng: np.random.Generator, low: int = 2, high: int = 10) -> int:
        return int(rng.integers(low, high + 1))
