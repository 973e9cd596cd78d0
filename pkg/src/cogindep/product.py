"""Product frames Ω×Θ and the discounting pipelines built on them.

A product frame is itself a :class:`~cogindep.core.Frame` whose elements are
the pairs ``(ω_i, θ_j)`` in row-major order (pair index ``i * |Θ| + j``), so
mass functions on Ω×Θ reuse every operator of :mod:`cogindep.core`.
Product subsets need not be rectangles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    EMPTY,
    Frame,
    MassFunction,
    categorical,
    conjunctive,
    indices,
)
from .errors import AlphaOutOfRangeError, EmptyConditionerError, FrameMismatchError

#: Frame of the reliability variable: the source is reliable (F) or not.
RELIABILITY_FRAME = Frame(("F", "notF"))

#: Frame of the dependence variable: independent, positively dependent,
#: negatively dependent.  "not independent" is the refinement {P, Pbar}.
DEPENDENCE_FRAME = Frame(("I", "P", "Pbar"))
DEP_I = 0b001
DEP_P = 0b010
DEP_N = 0b100
DEP_NOT_I = DEP_P | DEP_N


@dataclass(frozen=True, init=False)
class ProductFrame(Frame):
    """The product of two frames, labelled ``"ω|θ"`` pair by pair."""

    left: Frame
    right: Frame

    def __init__(self, left: Frame, right: Frame):
        labels = tuple(f"{a}|{b}" for a in left.labels for b in right.labels)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        self.__post_init__()

    def pair(self, i: int, j: int) -> int:
        return 1 << (i * len(self.right) + j)

    def rect(self, a: int, x: int) -> int:
        """Bitmask of the rectangle a × x."""
        self.left.check(a)
        self.right.check(x)
        width = len(self.right)
        bits = 0
        for i in indices(a):
            bits |= x << (i * width)
        return bits

    def project_left(self, bits: int) -> int:
        """{ω : (ω, θ) ∈ bits for some θ}."""
        width = len(self.right)
        row = self.right.full
        out = 0
        for i in range(len(self.left)):
            if (bits >> (i * width)) & row:
                out |= 1 << i
        return out


def _require_frame(m: MassFunction, frame: Frame, what: str) -> None:
    if m.frame != frame:
        raise FrameMismatchError(f"{what} is defined on {m.frame.labels}, expected {frame.labels}")


def vacuous_extension(m_right: MassFunction, pf: ProductFrame) -> MassFunction:
    """Lift a mass on Θ to Ω×Θ: each focal X becomes Ω×X."""
    _require_frame(m_right, pf.right, "mass to extend")
    full_left = pf.left.full
    return MassFunction._raw(pf, {pf.rect(full_left, x): v for x, v in m_right.items()})


def decondition_to_product(m_cond: MassFunction, theta_true: int, pf: ProductFrame) -> MassFunction:
    """Ballooning extension of m^Ω[θ] to Ω×Θ.

    Each focal A becomes (A × theta_true) ∪ (Ω × (Θ minus theta_true)).
    """
    _require_frame(m_cond, pf.left, "conditional mass")
    pf.right.check(theta_true)
    if theta_true == EMPTY:
        raise EmptyConditionerError("cannot decondition on an empty subset of Θ")
    rest = pf.rect(pf.left.full, pf.right.full & ~theta_true)
    out: dict[int, float] = {}
    for a, v in m_cond.items():
        y = pf.rect(a, theta_true) | rest
        out[y] = out.get(y, 0.0) + v
    return MassFunction._raw(pf, out)


def marginalize_left(m: MassFunction) -> MassFunction:
    """Project a mass on Ω×Θ back onto Ω."""
    pf = m.frame
    if not isinstance(pf, ProductFrame):
        raise FrameMismatchError("marginalize_left needs a mass defined on a ProductFrame")
    out: dict[int, float] = {}
    for y, v in m.items():
        a = pf.project_left(y)
        out[a] = out.get(a, 0.0) + v
    return MassFunction._raw(pf.left, out)


def reliability_discount(m: MassFunction, alpha: float) -> MassFunction:
    """Discounting through Ω×{F, notF}.

    The reliability mass {F: alpha, Θ: 1 - alpha} is vacuously extended, m is
    read as m^Ω[F] and deconditioned, both are combined conjunctively and the
    result is marginalized on Ω.
    """
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRangeError(f"alpha={alpha} outside [0, 1]")
    pf = ProductFrame(m.frame, RELIABILITY_FRAME)
    reliable = RELIABILITY_FRAME.subset("F")
    m_rel = MassFunction._raw(RELIABILITY_FRAME, {reliable: alpha, RELIABILITY_FRAME.full: 1.0 - alpha})
    joint = conjunctive(vacuous_extension(m_rel, pf), decondition_to_product(m, reliable, pf))
    return marginalize_left(joint)


def independence_adjust(m: MassFunction, m_dep: MassFunction) -> MassFunction:
    """Fold a dependence mass on {I, P, Pbar} into a source's mass on Ω.

    Conditionally on I the source keeps m; conditionally on Pbar it says
    the empty set; conditionally on P it is vacuous.  The vacuous version is
    the neutral element of the conjunctive rule and is left out of the
    combination.
    """
    _require_frame(m_dep, DEPENDENCE_FRAME, "dependence mass")
    pf = ProductFrame(m.frame, DEPENDENCE_FRAME)
    joint = conjunctive(
        conjunctive(
            vacuous_extension(m_dep, pf),
            decondition_to_product(m, DEP_I, pf),
        ),
        decondition_to_product(categorical(m.frame, EMPTY), DEP_N, pf),
    )
    return marginalize_left(joint)


def closed_form_adjust(m: MassFunction, m_dep: MassFunction) -> MassFunction:
    """Direct formula for :func:`independence_adjust`, used as its oracle.

    Mass of Θ-focals whose part outside Pbar is exactly {I} scales m, the
    ones containing P go to Ω, and the rest (Pbar alone) goes to ∅.
    """
    _require_frame(m_dep, DEPENDENCE_FRAME, "dependence mass")
    keep = 0.0
    to_empty = 0.0
    to_full = 0.0
    for x, v in m_dep.items():
        core = x & ~DEP_N
        if core == DEP_I:
            keep += v
        elif core & DEP_P:
            to_full += v
        else:
            to_empty += v
    full = m.frame.full
    out = {a: keep * v for a, v in m.items()}
    out[EMPTY] = out.get(EMPTY, 0.0) + to_empty
    out[full] = out.get(full, 0.0) + to_full
    return MassFunction._raw(m.frame, out)
