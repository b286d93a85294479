from __future__ import annotations

import pytest

from weylret.weyl import GroupDescriptor, WeylType

# One line per acceptance criterion, echoed after the run so the verdicts
# survive pytest's output capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def s3() -> GroupDescriptor:
    return GroupDescriptor.simple(WeylType.A, 3)


@pytest.fixture(scope="session")
def s4() -> GroupDescriptor:
    return GroupDescriptor.simple(WeylType.A, 4)


@pytest.fixture(scope="session")
def bc2() -> GroupDescriptor:
    return GroupDescriptor.simple(WeylType.BC, 2)


@pytest.fixture(scope="session")
def bc3() -> GroupDescriptor:
    return GroupDescriptor.simple(WeylType.BC, 3)


@pytest.fixture(scope="session")
def d3() -> GroupDescriptor:
    return GroupDescriptor.simple(WeylType.D, 3)


@pytest.fixture(scope="session")
def random_matrices():
    """Seeded matrices shared by the random-scale criteria: 100 per n."""
    from weylret.suites import _sample_matrices

    return {n: _sample_matrices(n, 100, seed=2026) for n in (3, 4, 5)}


@pytest.fixture(scope="session")
def table_cache():
    """(n, index) -> (fixed-point subset, algebraic table), filled by the
    first criterion that needs it and reused by the later ones."""
    return {}
