"""Seeded random mass-function datasets for the three dependence scenarios."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import Frame, MassFunction, pignistic
from .errors import LengthMismatchError, NotADerangementError

SCENARIOS = ("independent", "positive", "negative")


def cyclic_contradiction(n: int) -> tuple[int, ...]:
    """Default contradiction map ω_k -> ω_{k+1 mod n}."""
    return tuple((k + 1) % n for k in range(n))


def check_derangement(perm: Sequence[int], n: int) -> None:
    if sorted(perm) != list(range(n)) or any(perm[k] == k for k in range(n)):
        raise NotADerangementError(f"{list(perm)} is not a derangement of 0..{n - 1}")


@dataclass(frozen=True)
class GenConfig:
    frame_size: int = 5
    n: int = 100
    seed: int = 0
    scenario: str = "independent"
    contradiction: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}; expected one of {SCENARIOS}")
        if self.frame_size < 2 and self.scenario == "negative":
            raise ValueError("the negative scenario needs at least two classes")
        if self.frame_size < 1:
            raise ValueError("frame_size must be at least 1")
        if self.contradiction:
            check_derangement(self.contradiction, self.frame_size)
        elif self.frame_size > 1:
            object.__setattr__(self, "contradiction", cyclic_contradiction(self.frame_size))

    @property
    def frame(self) -> Frame:
        return Frame.of_size(self.frame_size)


def random_mass(frame: Frame, rng: np.random.Generator) -> MassFunction:
    """Uniform focal count, uniform distinct non-empty focals, uniform cut points."""
    n_subsets = frame.full  # non-empty subsets are 1..full
    n_focals = int(rng.integers(1, n_subsets, endpoint=True))
    focals = rng.choice(np.arange(1, n_subsets + 1), size=n_focals, replace=False)
    cuts = np.sort(rng.random(n_focals - 1))
    masses = np.diff(np.concatenate(([0.0], cuts, [1.0])))
    return MassFunction(frame, zip(focals.tolist(), masses.tolist()))


def random_masses(frame: Frame, n: int, rng: np.random.Generator) -> list[MassFunction]:
    return [random_mass(frame, rng) for _ in range(n)]


def decision_class(m: MassFunction) -> int:
    """Singleton of maximal pignistic probability (lowest index on ties)."""
    return 1 << pignistic(m).argmax()


def _remap(m: MassFunction, f) -> MassFunction:
    out: dict[int, float] = {}
    for b, v in m.items():
        b2 = f(b)
        out[b2] = out.get(b2, 0.0) + v
    return MassFunction._raw(m.frame, out)


def make_positive(masses: Sequence[MassFunction], decisions: Sequence[int] | None = None) -> list[MassFunction]:
    """Move each focal F to F ∪ d.

    ``d`` is the decision class of the mass itself unless ``decisions`` gives
    one per mass (used to align a second source on the first one).
    """
    if decisions is None:
        decisions = [decision_class(m) for m in masses]
    elif len(decisions) != len(masses):
        raise LengthMismatchError(f"{len(masses)} masses but {len(decisions)} decision classes")
    return [_remap(m, lambda b, d=d: b | d) for m, d in zip(masses, decisions)]


def make_negative(
    masses: Sequence[MassFunction],
    decisions_other: Sequence[int],
    contradiction: Sequence[int],
) -> list[MassFunction]:
    """Move each focal F of the i-th mass to (F ∪ c(d_i)) minus d_i.

    ``d_i`` is the other source's decision class for object i and ``c`` the
    contradiction map, given as a derangement of element indices.
    """
    if len(decisions_other) != len(masses):
        raise LengthMismatchError(f"{len(masses)} masses but {len(decisions_other)} decision classes")
    if not masses:
        return []
    n = len(masses[0].frame)
    check_derangement(contradiction, n)
    out = []
    for m, d in zip(masses, decisions_other):
        opposite = 1 << contradiction[d.bit_length() - 1]
        out.append(_remap(m, lambda b, d=d, c=opposite: (b | c) & ~d))
    return out


def generate(config: GenConfig) -> tuple[list[MassFunction], list[MassFunction]]:
    """Two aligned sources for the configured scenario.

    Each source draws from its own child stream of one seed sequence.  In the
    dependent scenarios the first source is made positive with respect to its
    own decision classes; the second one is then made positive (same decision
    classes) or negative (contradicting classes) with respect to the first.
    """
    frame = config.frame
    rng1, rng2 = (np.random.default_rng(s) for s in np.random.SeedSequence(config.seed).spawn(2))
    s1 = random_masses(frame, config.n, rng1)
    s2 = random_masses(frame, config.n, rng2)
    if config.scenario == "independent":
        return s1, s2
    decisions = [decision_class(m) for m in s1]
    s1 = make_positive(s1, decisions)
    if config.scenario == "positive":
        return s1, make_positive(s2, decisions)
    return s1, make_negative(s2, decisions, config.contradiction)
