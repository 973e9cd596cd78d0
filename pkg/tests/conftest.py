import numpy as np
import pytest
from hypothesis import strategies as st

from cogindep.core import Frame, MassFunction

ACCEPTANCE_LINES: list[str] = []


@st.composite
def masses(draw, frame=None, min_size=2, max_size=4, allow_empty=True):
    """Random mass function: a few distinct focal sets with Dirichlet-like weights."""
    if frame is None:
        frame = Frame.of_size(draw(st.integers(min_size, max_size)))
    lo = 0 if allow_empty else 1
    subsets = draw(st.lists(st.integers(lo, frame.full), min_size=1, max_size=6, unique=True))
    weights = draw(st.lists(st.floats(0.01, 1.0), min_size=len(subsets), max_size=len(subsets)))
    total = sum(weights)
    values = [w / total for w in weights]
    values[-1] = 1.0 - sum(values[:-1])
    return MassFunction(frame, dict(zip(subsets, values)))


@st.composite
def mass_pairs(draw, count=2):
    frame = Frame.of_size(draw(st.integers(2, 4)))
    return tuple(draw(masses(frame=frame)) for _ in range(count))


def random_mass_np(frame: Frame, rng: np.random.Generator) -> MassFunction:
    """Independent generator for tests (not the package's datagen)."""
    k = int(rng.integers(1, min(6, frame.full + 1) + 1))
    subsets = rng.choice(frame.full + 1, size=k, replace=False)
    values = rng.dirichlet(np.ones(k))
    return MassFunction(frame, {int(b): float(v) for b, v in zip(subsets, values)})


@pytest.fixture
def report_acceptance():
    """Record a one-line PASS/FAIL verdict; the lines are printed after the run."""

    def record(name: str, passed: bool, detail: str = "") -> None:
        line = f"{'PASS' if passed else 'FAIL'} {name}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
