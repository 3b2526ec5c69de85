from __future__ import annotations

import time

import numpy as np
import pytest

_ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}
_START = time.perf_counter()
SUITE_LIMIT = 300.0


@pytest.fixture
def acceptance():
    """Record the outcome of one acceptance criterion for the end-of-run summary."""

    def record(number: int, title: str, passed: bool, detail: str = "") -> None:
        _ACCEPTANCE[number] = (title, bool(passed), detail)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {title} {detail}".rstrip())

    return record


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed, detail = _ACCEPTANCE[number]
        line = f"[{'PASS' if passed else 'FAIL'}] {number:2d}. {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
    elapsed = time.perf_counter() - _START
    verdict = "PASS" if elapsed < SUITE_LIMIT else "FAIL"
    terminalreporter.write_line(f"[{verdict}] suite wall time {elapsed:.1f} s (limit {SUITE_LIMIT:.0f} s)")
