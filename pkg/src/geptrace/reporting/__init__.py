"""Check aggregation and JSON report output."""

from .aggregator import CheckAggregator
from .json_output import dumps, write_json
from .run_report import (
    EXIT_FAILURE,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    InstanceSummary,
    OptimizerSummary,
    RunReport,
    SpectrumSummary,
    build_run_report,
)

__all__ = [
    "CheckAggregator",
    "dumps",
    "write_json",
    "EXIT_OK",
    "EXIT_FAILURE",
    "EXIT_NOT_CONVERGED",
    "InstanceSummary",
    "OptimizerSummary",
    "RunReport",
    "SpectrumSummary",
    "build_run_report",
]
