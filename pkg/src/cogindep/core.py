"""Frames, mass functions and the classical belief-function operators.

Subsets of a frame are plain ``int`` bitmasks: bit ``i`` is set when the
``i``-th element of the frame belongs to the subset.  ``0`` is the empty set
and ``frame.full`` is the whole frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    AlphaOutOfRangeError,
    DuplicateSubsetError,
    EmptyConditionerError,
    EmptyListError,
    FocalOutsideConditionerError,
    FrameMismatchError,
    NegativeMassError,
    NonUnitSumError,
    SubsetOutOfRangeError,
    TotalConflictError,
)

MAX_FRAME_SIZE = 16
MASS_TOL = 1e-9

EMPTY = 0


def jaccard(a: int, b: int) -> float:
    """|A ∩ B| / |A ∪ B|, with the convention that two empty sets score 1."""
    union = a | b
    if union == 0:
        return 1.0
    return (a & b).bit_count() / union.bit_count()


@dataclass(frozen=True)
class Frame:
    """An ordered frame of discernment."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(str(lab) for lab in self.labels))
        if not self.labels:
            raise ValueError("a frame needs at least one element")
        if len(self.labels) > MAX_FRAME_SIZE:
            raise ValueError(f"frames are limited to {MAX_FRAME_SIZE} elements")
        if any(not lab for lab in self.labels):
            raise ValueError("frame labels must be non-empty")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate labels in frame {self.labels}")

    @classmethod
    def of_size(cls, n: int, prefix: str = "ω") -> "Frame":
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def singleton(self, i: int) -> int:
        if not 0 <= i < len(self.labels):
            raise SubsetOutOfRangeError(f"element index {i} outside frame of size {len(self)}")
        return 1 << i

    def subset(self, *labels: str) -> int:
        """Bitmask of the subset holding the named elements."""
        bits = 0
        for lab in labels:
            bits |= 1 << self.index(lab)
        return bits

    def from_indices(self, indices: Iterable[int]) -> int:
        bits = 0
        for i in indices:
            bits |= self.singleton(int(i))
        return bits

    def check(self, bits: int) -> int:
        if not 0 <= bits <= self.full:
            raise SubsetOutOfRangeError(f"subset {bits:#x} outside frame of size {len(self)}")
        return bits

    def format(self, bits: int) -> str:
        if bits == 0:
            return "∅"
        return "∪".join(self.labels[i] for i in indices(bits))


def indices(bits: int) -> list[int]:
    """Sorted element indices of a subset."""
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


class MassFunction:
    """An immutable mass function (basic belief assignment) on a frame.

    Only focal elements are stored.  Mass on the empty set is allowed since
    the unnormalized conjunctive rule produces it.  Indexing with a subset
    that is not focal returns ``0.0``.
    """

    __slots__ = ("frame", "_masses")

    def __init__(self, frame: Frame, assignments: Mapping[int, float] | Iterable[tuple[int, float]]):
        if isinstance(assignments, Mapping):
            assignments = assignments.items()
        masses: dict[int, float] = {}
        for bits, mass in assignments:
            bits = frame.check(int(bits))
            mass = float(mass)
            if not mass >= 0.0:
                raise NegativeMassError(f"mass {mass} on {frame.format(bits)} is negative")
            if bits in masses:
                raise DuplicateSubsetError(f"subset {frame.format(bits)} assigned twice")
            masses[bits] = mass
        total = math.fsum(masses.values())
        if abs(total - 1.0) > MASS_TOL:
            raise NonUnitSumError(f"masses sum to {total!r}, expected 1")
        self.frame = frame
        self._masses = {b: v for b, v in sorted(masses.items()) if v > 0.0}

    @classmethod
    def _raw(cls, frame: Frame, masses: Mapping[int, float]) -> "MassFunction":
        # Internal constructor for operator outputs; inputs were already valid.
        obj = cls.__new__(cls)
        obj.frame = frame
        obj._masses = {b: v for b, v in sorted(masses.items()) if v > 0.0}
        return obj

    def __getitem__(self, bits: int) -> float:
        return self._masses.get(bits, 0.0)

    def __iter__(self) -> Iterator[int]:
        return iter(self._masses)

    def __len__(self) -> int:
        return len(self._masses)

    def __contains__(self, bits: object) -> bool:
        return bits in self._masses

    def items(self):
        return self._masses.items()

    @property
    def focals(self) -> tuple[int, ...]:
        return tuple(self._masses)

    def total(self) -> float:
        return math.fsum(self._masses.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and self._masses == other._masses

    def __hash__(self) -> int:
        return hash((self.frame, tuple(self._masses.items())))

    def isclose(self, other: "MassFunction", tol: float = 1e-12) -> bool:
        """Same frame and every subset's mass within ``tol``."""
        if self.frame != other.frame:
            return False
        keys = set(self._masses) | set(other._masses)
        return all(abs(self[k] - other[k]) <= tol for k in keys)

    def max_abs_diff(self, other: "MassFunction") -> float:
        keys = set(self._masses) | set(other._masses)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    def __repr__(self) -> str:
        body = ", ".join(f"{self.frame.format(b)}: {v:.6g}" for b, v in self._masses.items())
        return f"MassFunction({{{body}}})"

    def to_dict(self) -> dict:
        return {
            "frame": list(self.frame.labels),
            "focals": [{"set": indices(b), "mass": v} for b, v in self._masses.items()],
        }

    @classmethod
    def from_dict(cls, data: Mapping, frame: Frame | None = None) -> "MassFunction":
        if frame is None:
            frame = Frame(tuple(data["frame"]))
        elif "frame" in data and tuple(data["frame"]) != frame.labels:
            raise FrameMismatchError(f"record frame {data['frame']} differs from {list(frame.labels)}")
        return cls(frame, [(frame.from_indices(f["set"]), f["mass"]) for f in data["focals"]])


@dataclass(frozen=True)
class PignisticDistribution:
    frame: Frame
    probs: tuple[float, ...]

    def __getitem__(self, label_or_index: str | int) -> float:
        if isinstance(label_or_index, str):
            label_or_index = self.frame.index(label_or_index)
        return self.probs[label_or_index]

    def argmax(self) -> int:
        """Index of the most probable element; the lowest index wins ties."""
        best = 0
        for i, p in enumerate(self.probs):
            if p > self.probs[best]:
                best = i
        return best


def make_mass(frame: Frame, assignments: Mapping[int, float] | Iterable[tuple[int, float]]) -> MassFunction:
    """Validate ``assignments`` and build a mass function; zero masses are dropped."""
    if isinstance(assignments, Mapping):
        assignments = list(assignments.items())
    else:
        assignments = list(assignments)
    if not assignments:
        raise EmptyListError("a mass function needs at least one assignment")
    return MassFunction(frame, assignments)


def vacuous(frame: Frame) -> MassFunction:
    return MassFunction._raw(frame, {frame.full: 1.0})


def categorical(frame: Frame, bits: int) -> MassFunction:
    return MassFunction._raw(frame, {frame.check(bits): 1.0})


def _same_frame(*masses: MassFunction) -> Frame:
    frame = masses[0].frame
    for m in masses[1:]:
        if m.frame != frame:
            raise FrameMismatchError(f"frames differ: {frame.labels} vs {m.frame.labels}")
    return frame


def conjunctive(m1: MassFunction, m2: MassFunction) -> MassFunction:
    """Unnormalized conjunctive rule; conflict stays on the empty set."""
    frame = _same_frame(m1, m2)
    out: dict[int, float] = {}
    for b, v in m1.items():
        for c, w in m2.items():
            a = b & c
            out[a] = out.get(a, 0.0) + v * w
    return MassFunction._raw(frame, out)


def disjunctive(m1: MassFunction, m2: MassFunction) -> MassFunction:
    frame = _same_frame(m1, m2)
    out: dict[int, float] = {}
    for b, v in m1.items():
        for c, w in m2.items():
            a = b | c
            out[a] = out.get(a, 0.0) + v * w
    return MassFunction._raw(frame, out)


def exact_mean(values: Sequence[float]) -> float:
    """Correctly rounded arithmetic mean.

    Exact rational accumulation makes the mean idempotent (the mean of
    identical values is that value, bit for bit) and order independent.
    """
    return float(sum((Fraction(v) for v in values), Fraction(0)) / len(values))


def mean_combine(masses: Sequence[MassFunction]) -> MassFunction:
    """Per-subset arithmetic mean of a list of mass functions."""
    if not masses:
        raise EmptyListError("mean_combine needs at least one mass function")
    frame = _same_frame(*masses)
    keys = sorted(set().union(*(m.focals for m in masses)))
    return MassFunction._raw(frame, {k: exact_mean([m[k] for m in masses]) for k in keys})


def condition(m: MassFunction, a: int) -> MassFunction:
    """Conditioning on ``a``: every focal B moves to B ∩ a."""
    m.frame.check(a)
    if a == EMPTY:
        raise EmptyConditionerError("cannot condition on the empty set")
    out: dict[int, float] = {}
    for b, v in m.items():
        c = b & a
        out[c] = out.get(c, 0.0) + v
    return MassFunction._raw(m.frame, out)


def decondition(m_cond: MassFunction, a: int) -> MassFunction:
    """Ballooning extension: every focal C ⊆ a moves to C ∪ complement(a)."""
    frame = m_cond.frame
    frame.check(a)
    outside = frame.full & ~a
    out: dict[int, float] = {}
    for c, v in m_cond.items():
        if c & outside:
            raise FocalOutsideConditionerError(
                f"focal {frame.format(c)} is not contained in {frame.format(a)}"
            )
        out[c | outside] = v
    return MassFunction._raw(frame, out)


def discount(m: MassFunction, alpha: float) -> MassFunction:
    """Reliability discounting: keep a fraction ``alpha`` and move the rest to Ω."""
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRangeError(f"alpha={alpha} outside [0, 1]")
    if alpha == 1.0:
        return m
    full = m.frame.full
    out = {b: alpha * v for b, v in m.items() if b != full}
    out[full] = 1.0 - alpha * (1.0 - m[full])
    return MassFunction._raw(m.frame, out)


def pignistic(m: MassFunction) -> PignisticDistribution:
    empty = m[EMPTY]
    if empty >= 1.0 - MASS_TOL:
        raise TotalConflictError("pignistic transform undefined when m(∅) = 1")
    scale = 1.0 - empty
    probs = [0.0] * len(m.frame)
    for c, v in m.items():
        if c == EMPTY:
            continue
        share = v / c.bit_count() / scale
        for i in indices(c):
            probs[i] += share
    return PignisticDistribution(m.frame, tuple(probs))


def jousselme(m1: MassFunction, m2: MassFunction) -> float:
    """Jousselme distance, with the Jaccard weights evaluated per focal pair."""
    _same_frame(m1, m2)
    keys = sorted(set(m1.focals) | set(m2.focals))
    diff = [m1[k] - m2[k] for k in keys]
    q = 0.0
    for i, a in enumerate(keys):
        if diff[i] == 0.0:
            continue
        q += diff[i] * diff[i]
        for j in range(i + 1, len(keys)):
            if diff[j] != 0.0:
                q += 2.0 * diff[i] * diff[j] * jaccard(a, keys[j])
    return min(1.0, math.sqrt(max(0.0, 0.5 * q)))
