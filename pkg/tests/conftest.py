import math

import pytest

from chainedswitch import PlanningProblem, compress, synthesize

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def reference_problem():
    return PlanningProblem((3.0, 0.5, 1.0), (0.0, 0.0, 0.0), 1.0, 2 * math.pi)


@pytest.fixture(scope="session")
def reference_plan(reference_problem):
    return synthesize(reference_problem)


@pytest.fixture(scope="session")
def reference_plan_4(reference_plan):
    return compress(reference_plan, 0.0)


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(name, ok, detail=""):
        _ACCEPTANCE.append((name, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
