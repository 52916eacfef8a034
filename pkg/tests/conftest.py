"""Shared pytest wiring: a terminal block summarizing the acceptance run."""

from __future__ import annotations

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None:
        return
    results = getattr(mod, "RESULTS", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, elapsed, status in sorted(results):
        terminalreporter.write_line(
            f"criterion {number:2d}: {status} - {description} [{elapsed:.2f}s]"
        )
