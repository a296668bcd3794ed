"""Shared fixtures and the acceptance summary.

Tests in ``test_acceptance.py`` carry ``@pytest.mark.criterion(n, text)``;
the terminal summary prints one PASS/FAIL line per criterion.
"""

from __future__ import annotations

import pytest
from hypothesis import settings

settings.register_profile("ck", max_examples=60, deadline=None)
settings.load_profile("ck")

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _MARKS.get(report.nodeid)
    if marker is None:
        return
    num, text = marker
    entry = _CRITERIA.setdefault(num, {"text": text, "ok": True, "tests": 0})
    entry["tests"] += 1
    if report.outcome != "passed":
        entry["ok"] = False


_MARKS: dict[str, tuple[int, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _MARKS[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        e = _CRITERIA[num]
        status = "PASS" if e["ok"] else "FAIL"
        tr.write_line(f"criterion {num:2d}: {status}  {e['text']} ({e['tests']} test(s))")
