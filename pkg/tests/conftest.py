import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large]
)
settings.load_profile("default")


_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(number, label, ok, seconds, tolerance="exact")."""
    def record(number, label, ok, seconds, tolerance="exact", note=""):
        line = f"criterion {number:>2}  {'PASS' if ok else 'FAIL'}  [{tolerance}]  {seconds:8.2f}s  {label}"
        if note:
            line += f"  ({note})"
        _ACCEPTANCE.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
