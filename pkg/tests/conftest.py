import numpy as np
import pytest

from blochsteer.bloch import random_angles

ACCEPTANCE_LINES = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    """Log one acceptance line; shown in the terminal summary."""
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_pairs(rng, n):
    return [(random_angles(rng), random_angles(rng)) for _ in range(n)]


def random_lambda(rng, lo=0.01, hi=100.0):
    return float(10 ** rng.uniform(np.log10(lo), np.log10(hi)))
