"""Verdict carrier shared by every checker."""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

INEQ_TOL = 1e-9
EQ_TOL = 1e-8


class EqualityCase(str, Enum):
    """Whether an inequality was met with equality."""

    STRICT = "strict"
    EQUALITY = "equality"
    NOT_APPLICABLE = "not-applicable"


def scaled_tol(base: float, lhs: float, rhs: float) -> float:
    """base * max(1, |lhs|, |rhs|)."""
    return base * max(1.0, abs(lhs), abs(rhs))


@dataclass(frozen=True, eq=False)
class CheckReport:
    """
    Outcome of one inequality or identity check.

    residual is rhs - lhs. holds means residual >= -tol; equality_case is
    EQUALITY exactly when |residual| <= eq_tol. Identity checks (measured
    error against a threshold) use NOT_APPLICABLE.
    """

    name: str
    holds: bool
    lhs: float
    rhs: float
    residual: float
    equality_case: EqualityCase
    tol: float = 0.0
    eq_tol: float = 0.0
    equality_verified: Optional[bool] = None
    witnesses: Dict[str, Any] = field(default_factory=dict)
    detail: str = ""

    @property
    def passed(self) -> bool:
        """holds, and any equality follow-up did not fail."""
        return self.holds and self.equality_verified is not False

    def with_equality(self, verified: Optional[bool], **witnesses) -> "CheckReport":
        merged = dict(self.witnesses)
        merged.update(witnesses)
        return replace(self, equality_verified=verified, witnesses=merged)

    def to_dict(self, include_witnesses: bool = True) -> Dict[str, Any]:
        data = {
            "name": self.name,
            "holds": self.holds,
            "passed": self.passed,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "equality_case": self.equality_case.value,
            "equality_verified": self.equality_verified,
            "tol": self.tol,
            "eq_tol": self.eq_tol,
        }
        if self.detail:
            data["detail"] = self.detail
        if include_witnesses and self.witnesses:
            data["witnesses"] = {
                key: value.tolist() if isinstance(value, np.ndarray) else value
                for key, value in self.witnesses.items()
            }
        return data


def inequality_report(
    name: str,
    lhs: float,
    rhs: float,
    ineq_tol: float = INEQ_TOL,
    eq_tol: float = EQ_TOL,
    tol: Optional[float] = None,
    **witnesses,
) -> CheckReport:
    """
    Judge lhs <= rhs.

    Tolerances scale with magnitude unless an absolute tol is given.
    """
    lhs = float(lhs)
    rhs = float(rhs)
    residual = rhs - lhs
    tolerance = tol if tol is not None else scaled_tol(ineq_tol, lhs, rhs)
    equality_tolerance = scaled_tol(eq_tol, lhs, rhs)
    case = EqualityCase.EQUALITY if abs(residual) <= equality_tolerance else EqualityCase.STRICT
    return CheckReport(
        name=name,
        holds=bool(residual >= -tolerance),
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        equality_case=case,
        tol=tolerance,
        eq_tol=equality_tolerance,
        witnesses=dict(witnesses),
    )


def identity_report(name: str, measured: float, threshold: float, detail: str = "", **witnesses) -> CheckReport:
    """Judge a measured error against a threshold (lhs = measured, rhs = threshold)."""
    measured = float(measured)
    threshold = float(threshold)
    return CheckReport(
        name=name,
        holds=bool(measured <= threshold),
        lhs=measured,
        rhs=threshold,
        residual=threshold - measured,
        equality_case=EqualityCase.NOT_APPLICABLE,
        witnesses=dict(witnesses),
        detail=detail,
    )
