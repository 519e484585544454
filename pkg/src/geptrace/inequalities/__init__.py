"""Numerical verification of the trace and eigenvalue inequalities."""

from .report import CheckReport, EqualityCase, inequality_report, identity_report, scaled_tol
from .spectral import (
    rayleigh_bounds,
    haemers_interlace,
    constrained_bound,
    unconstrained_bound,
    improvement_bound,
)
from .trace import (
    von_neumann,
    psd_von_neumann,
    psd_svd_is_eig,
    m_spectrum,
    m_spectrum_report,
    trace_chain,
    perspective_bound,
)

__all__ = [
    "CheckReport",
    "EqualityCase",
    "inequality_report",
    "identity_report",
    "scaled_tol",
    "rayleigh_bounds",
    "haemers_interlace",
    "constrained_bound",
    "unconstrained_bound",
    "improvement_bound",
    "von_neumann",
    "psd_von_neumann",
    "psd_svd_is_eig",
    "m_spectrum",
    "m_spectrum_report",
    "trace_chain",
    "perspective_bound",
]
