"""Shared fixtures and the acceptance summary printed after the run."""

from __future__ import annotations

import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("LEFLAB_HYPOTHESIS_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def record_acceptance(number: int, passed: bool, detail: str) -> None:
    """Store one verdict line and echo it immediately (visible with -s)."""
    status = "PASS" if passed else "FAIL"
    _ACCEPTANCE[number] = (status, detail)
    print(f"criterion {number:>2}: {status}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {detail}")
