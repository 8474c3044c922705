"""Verification-report tests."""

import json

import pytest

from casimirlab.model import InvalidParameter
from casimirlab.verify import SUITES, CheckResult, VerifyReport, run_suite


def test_unknown_suite_rejected():
    with pytest.raises(InvalidParameter):
        run_suite("everything")
    with pytest.raises(InvalidParameter):
        run_suite("all", seed=1.5)


def test_closed_form_suite_passes():
    report = run_suite("closed-form")
    assert report.suite == "closed-form"
    assert report.overall is True
    ids = [check.id for check in report.checks]
    assert len(ids) == len(set(ids))
    assert "reflecting-scaling" in ids
    assert "absorbing-two-routes" in ids


def test_simulation_suite_is_reproducible():
    first = run_suite("simulation", seed=42)
    second = run_suite("simulation", seed=42)
    assert [c.observed for c in first.checks] == [c.observed for c in second.checks]
    assert first.overall is True


def test_all_suite_unions_the_others():
    combined = run_suite("all", seed=7)
    partial_ids = []
    for suite in SUITES[1:]:
        partial_ids.extend(check.id for check in run_suite(suite, seed=7).checks)
    assert [check.id for check in combined.checks] == partial_ids


def test_report_serializes_to_json():
    report = run_suite("asymptotics")
    payload = report.as_dict()
    text = json.dumps(payload, sort_keys=True)
    parsed = json.loads(text)
    assert parsed["suite"] == "asymptotics"
    assert all(
        set(check) == {"id", "description", "expected", "observed", "tolerance", "passed"}
        for check in parsed["checks"]
    )
    assert {"package", "python", "numpy", "scipy", "numba", "seed", "timestamp"} <= set(
        parsed["provenance"]
    )


def test_check_result_pass_logic():
    passing = CheckResult("a", "b", 1.0, 1.0 + 5e-7, 1e-6, True)
    assert passing.passed
    report = VerifyReport("all", (passing,), True, {})
    assert report.as_dict()["overall"] is True


def test_provenance_honors_source_date_epoch(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    report = run_suite("asymptotics")
    assert report.provenance["timestamp"] == "1970-01-01T00:00:00+00:00"
