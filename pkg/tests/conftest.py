from __future__ import annotations

import pytest

from regmod import AtomSet, GeneratorSet, ModuleVector, PrimeField

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Recorder for one pass/fail line per acceptance criterion."""

    def record(line: str) -> None:
        ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def f5() -> PrimeField:
    return PrimeField(5)


@pytest.fixture
def atoms3() -> AtomSet:
    return AtomSet(("q1", "q2", "q3"))


@pytest.fixture
def fixture_gens(f5, atoms3) -> GeneratorSet:
    """Two generators in A² over F_5 with ranks (2, 1, 2) across the atoms."""
    g1 = ModuleVector.from_grid(f5, atoms3, [[1, 1, 1], [0, 0, 0]])
    g2 = ModuleVector.from_grid(f5, atoms3, [[0, 0, 0], [1, 0, 1]])
    return GeneratorSet(f5, atoms3, 2, (g1, g2))
