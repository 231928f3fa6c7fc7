from __future__ import annotations

import re
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

_AC = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_ac(\d+)_", report.nodeid)
    if not m or report.when not in ("setup", "call"):
        return
    entry = _AC.setdefault(int(m.group(1)), {"failed": [], "duration": 0.0, "count": 0})
    if report.failed:
        entry["failed"].append(report.nodeid.split("::")[-1])
    if report.when == "call":
        entry["duration"] += report.duration
        entry["count"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _AC:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_AC):
        e = _AC[key]
        status = "FAIL" if e["failed"] else "PASS"
        extra = f"  failed: {', '.join(e['failed'])}" if e["failed"] else ""
        terminalreporter.write_line(
            f"AC{key}: {status}  ({e['count']} test(s), {e['duration']:.3f} s){extra}")
