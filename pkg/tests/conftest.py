import numpy as np
import pytest

from niep.eig import BACKEND


def pytest_report_header(config):
    return f"niep eigen-solver backend: {BACKEND}"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, in criterion order."""
    lines = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py::test_ac" not in getattr(report, "nodeid", ""):
                continue
            if report.when != "call" and outcome == "passed":
                continue
            name = report.nodeid.split("::")[-1]
            lines[name] = "PASS" if outcome == "passed" else "FAIL"
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(lines, key=lambda n: int(n.split("_")[1][2:])):
        terminalreporter.write_line(f"{lines[name]}  {name}")
