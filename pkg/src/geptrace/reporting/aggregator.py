"""Aggregator for combining check reports from multiple suites."""

from collections import defaultdict
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from ..inequalities.report import CheckReport, EqualityCase
from ..suites.base import SuiteRun
from ..utils.logging import LoggerMixin
from .json_output import write_json


class CheckAggregator(LoggerMixin):
    """
    Collects check reports tagged with suite and trial.

    Handles:
    - Pass/fail statistics per suite and overall
    - Order-stable JSON payloads
    """

    def __init__(self, include_witnesses: bool = False):
        self.include_witnesses = include_witnesses
        self.records: List[Dict[str, Any]] = []
        self.executed_suites: Dict[str, Dict[str, Any]] = {}

    def register_suite(self, name: str, description: str = "", trials: int = 0):
        """
        Register that a suite was executed.

        Args:
            name: Suite selector name
            description: One-line summary of what the suite checks
            trials: Number of random trials (0 for file inputs)
        """
        entry = self.executed_suites.setdefault(
            name, {"suite": name, "description": description, "trials": 0, "checks": 0}
        )
        entry["trials"] += trials

    def add_reports(self, reports: Iterable[CheckReport], suite: str, trial: int = -1):
        """
        Add reports produced by one suite run.

        Args:
            reports: Check reports
            suite: Suite name
            trial: Trial index, -1 for file inputs
        """
        added = 0
        for report in reports:
            record = {"suite": suite, "trial": trial}
            record.update(report.to_dict(include_witnesses=self.include_witnesses))
            self.records.append(record)
            added += 1
        self.executed_suites.setdefault(
            suite, {"suite": suite, "description": "", "trials": 0, "checks": 0}
        )["checks"] += added
        self.logger.debug(f"Added {added} report(s) from {suite} trial {trial}")

    def add_runs(self, runs: Iterable[SuiteRun]):
        for run in runs:
            self.add_reports(run.reports, run.suite, run.trial)

    def get_statistics(self) -> Dict[str, Any]:
        """
        Get summary statistics about the collected reports.

        Returns:
            Dictionary with statistics
        """
        stats = {
            "total": len(self.records),
            "passed": 0,
            "failed": 0,
            "inequality_failures": 0,
            "equality_failures": 0,
            "by_equality_case": {case.value: 0 for case in EqualityCase},
            "by_suite": {},
        }
        by_suite = defaultdict(lambda: {"total": 0, "passed": 0, "failed": 0})

        for record in self.records:
            suite = by_suite[record["suite"]]
            suite["total"] += 1
            stats["by_equality_case"][record["equality_case"]] += 1
            if record["passed"]:
                stats["passed"] += 1
                suite["passed"] += 1
            else:
                stats["failed"] += 1
                suite["failed"] += 1
                if not record["holds"]:
                    stats["inequality_failures"] += 1
                else:
                    stats["equality_failures"] += 1

        stats["by_suite"] = dict(by_suite)
        return stats

    def all_passed(self) -> bool:
        return all(record["passed"] for record in self.records)

    def get_failures(self) -> List[Dict[str, Any]]:
        return [record for record in self.records if not record["passed"]]

    def get_records(self) -> List[Dict[str, Any]]:
        return self.records

    def to_payload(self, metadata: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Build the JSON payload: metadata, suites, summary, checks.
        """
        return {
            "metadata": metadata or {},
            "suites": list(self.executed_suites.values()),
            "summary": self.get_statistics(),
            "passed": self.all_passed(),
            "checks": self.records,
        }

    def write_json(self, output_path: Optional[Path], metadata: Optional[Dict[str, Any]] = None) -> str:
        """
        Write the payload to output_path (if given) and return the JSON text.
        """
        text = write_json(self.to_payload(metadata), output_path)
        if output_path is not None:
            self.logger.info(f"Wrote {len(self.records)} check report(s) to {output_path}")
        return text

    def clear(self):
        self.records = []
        self.executed_suites = {}
