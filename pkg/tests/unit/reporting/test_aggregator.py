"""Tests for the check aggregator."""

import json

import numpy as np

from geptrace.inequalities import identity_report, inequality_report
from geptrace.reporting import CheckAggregator
from geptrace.suites import SuiteRun


def _reports():
    return [
        inequality_report("strict", 1.0, 2.0),
        inequality_report("equal", 2.0, 2.0).with_equality(True),
        inequality_report("broken", 3.0, 1.0, witness=np.array([1.0, 2.0])),
    ]


def test_aggregator_add_reports():
    """Test that reports are tagged with suite and trial."""
    agg = CheckAggregator()
    agg.add_reports(_reports(), "demo", trial=4)

    records = agg.get_records()
    assert len(records) == 3
    assert records[0]["suite"] == "demo"
    assert records[0]["trial"] == 4
    assert "witnesses" not in records[2]


def test_aggregator_statistics():
    """Test pass/fail and equality-case counts."""
    agg = CheckAggregator()
    agg.add_reports(_reports(), "demo")
    agg.add_reports([identity_report("pivot", 0.0, 1e-9)], "other")

    stats = agg.get_statistics()
    assert stats["total"] == 4
    assert stats["passed"] == 3
    assert stats["failed"] == 1
    assert stats["inequality_failures"] == 1
    assert stats["by_equality_case"] == {"strict": 2, "equality": 1, "not-applicable": 1}
    assert stats["by_suite"]["demo"] == {"total": 3, "passed": 2, "failed": 1}


def test_aggregator_equality_failure_counted():
    """Test that a failed equality follow-up is an equality failure."""
    agg = CheckAggregator()
    agg.add_reports([inequality_report("eq", 1.0, 1.0).with_equality(False)], "demo")
    stats = agg.get_statistics()
    assert stats["equality_failures"] == 1
    assert not agg.all_passed()


def test_aggregator_failures_and_runs():
    """Test get_failures after adding suite runs."""
    agg = CheckAggregator()
    agg.add_runs([SuiteRun("demo", 0, _reports()), SuiteRun("demo", 1, _reports()[:1])])
    assert [f["name"] for f in agg.get_failures()] == ["broken"]
    assert agg.executed_suites["demo"]["checks"] == 4


def test_aggregator_witnesses_optional():
    """Test that witnesses are included on request."""
    agg = CheckAggregator(include_witnesses=True)
    agg.add_reports(_reports(), "demo")
    assert agg.get_records()[2]["witnesses"]["witness"] == [1.0, 2.0]


def test_aggregator_write_json(tmp_path):
    """Test the JSON payload written to disk."""
    agg = CheckAggregator()
    agg.register_suite("demo", "a demo suite", trials=2)
    agg.add_reports(_reports(), "demo")

    output = tmp_path / "checks.json"
    text = agg.write_json(output, {"seed": 1})
    data = json.loads(output.read_text())

    assert text == output.read_text()
    assert list(data) == ["metadata", "suites", "summary", "passed", "checks"]
    assert data["metadata"] == {"seed": 1}
    assert data["suites"][0]["trials"] == 2
    assert data["passed"] is False


def test_aggregator_clear():
    """Test clearing collected reports."""
    agg = CheckAggregator()
    agg.add_reports(_reports(), "demo")
    agg.clear()
    assert agg.get_records() == []
    assert agg.all_passed()
