"""Shared fixtures and reporting hooks for the test suite."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

_FIXTURE_PATH = Path(__file__).parent / "fixtures" / "golden.json"

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def golden() -> dict[str, float]:
    """Frozen reference values produced by scripts/make_fixtures.py."""
    payload = json.loads(_FIXTURE_PATH.read_text())
    return {name.upper(): float(value) for name, value in payload["values"].items()}


def pytest_runtest_logreport(report: pytest.TestReport) -> None:
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    if hasattr(report, "wasxfail"):
        status = "XFAIL" if report.skipped else "XPASS"
    elif report.passed:
        status = "PASS"
    elif report.failed:
        status = "FAIL"
    else:
        status = "SKIP"
    _ACCEPTANCE_RESULTS.append((status, report.nodeid))


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for status, nodeid in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{status}: {nodeid}")
