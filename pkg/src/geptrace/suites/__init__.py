"""Check suites: seeded random trials and file-driven runs of the inequality checkers."""

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
from .runner import SUITE_CLASSES, create_suites, resolve_suites, run_suites, run_suites_on_inputs

__all__ = [
    "BaseSuite",
    "SuiteInputs",
    "SuiteRun",
    "RayleighSuite",
    "HaemersSuite",
    "ConstrainedSuite",
    "UnconstrainedSuite",
    "ImprovementSuite",
    "VonNeumannSuite",
    "PsdVonNeumannSuite",
    "SvdEigSuite",
    "MSpectrumSuite",
    "TraceChainSuite",
    "PerspectiveSuite",
    "SUITE_CLASSES",
    "create_suites",
    "resolve_suites",
    "run_suites",
    "run_suites_on_inputs",
]
