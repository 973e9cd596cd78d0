"""Worked examples, parameter sweeps and golden reproductions of the reference tables."""

from __future__ import annotations

import csv
import io
import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import Frame, MassFunction, categorical, conjunctive, make_mass
from .datagen import GenConfig, generate
from .independence import AnalysisConfig, IndependenceReport, analyze, dependence_mass, swept_dependence_mass
from .product import (
    DEP_I,
    DEP_N,
    DEP_NOT_I,
    DEP_P,
    DEPENDENCE_FRAME,
    ProductFrame,
    closed_form_adjust,
    decondition_to_product,
    independence_adjust,
    vacuous_extension,
)

EXAMPLE_FRAME = Frame.of_size(3)
W1, W2, W12, OMEGA = 0b001, 0b010, 0b011, 0b111
FOCAL_ORDER = (0, W1, W2, W12, OMEGA)
FOCAL_NAMES = ("∅", "ω1", "ω2", "ω1∪ω2", "Ω")


def example_m1() -> MassFunction:
    return make_mass(EXAMPLE_FRAME, {W1: 0.2, W12: 0.5, OMEGA: 0.3})


def example_m2() -> MassFunction:
    return make_mass(EXAMPLE_FRAME, {W2: 0.1, W12: 0.6, OMEGA: 0.3})


def example_dependence() -> MassFunction:
    """Strong positive dependence of S1 on S2 used in the worked example."""
    return dependence_mass(I=0.26, P=0.56, N=0.18)


def dogmatic_example() -> MassFunction:
    return make_mass(EXAMPLE_FRAME, {W1: 0.4, W12: 0.6})


# Reference values.  Rows follow FOCAL_ORDER; blank cells are zero.
TABLE3_MARGINAL = (0.18, 0.052, 0.0, 0.13, 0.638)
TABLE3_M2 = (0.0, 0.0, 0.1, 0.6, 0.3)
TABLE3_COMBINED = (0.25432, 0.0468, 0.00768, 0.15528, 0.53592)

TABLE4_CASES_I = ((0.95, 0.95, 0.05), (0.95, 0.05, 0.95), (0.95, 0.05, 0.05))
TABLE4_CASES_J = ((0.9, 0.9, 0.1), (0.9, 0.1, 0.9), (0.9, 0.1, 0.1))
TABLE4_M1 = (
    (0.045125, 0.01, 0.0, 0.025, 0.919875),
    (0.045125, 0.19, 0.0, 0.475, 0.289875),
    (0.002375, 0.181, 0.0, 0.4525, 0.364125),
)
TABLE4_M2 = (
    (0.081, 0.0, 0.01, 0.06, 0.849),
    (0.081, 0.0, 0.09, 0.54, 0.289),
    (0.009, 0.0, 0.082, 0.492, 0.417),
)
TABLE4_COMBINED = (
    (
        (0.12257, 0.00909, 0.0779175, 0.07138, 0.780974),
        (0.12337, 0.00829, 0.0850388, 0.517457, 0.265844),
        (0.0545389, 0.00909, 0.0774798, 0.475303, 0.383588),
    ),
    (
        (0.12437, 0.17271, 0.00764875, 0.449167, 0.246104),
        (0.13957, 0.15751, 0.0688388, 0.550307, 0.0837739),
        (0.0692989, 0.17271, 0.0627198, 0.574394, 0.120878),
    ),
    (
        (0.0849926, 0.164529, 0.00816625, 0.43317, 0.309142),
        (0.0994726, 0.150049, 0.0734962, 0.57175, 0.105232),
        (0.0261956, 0.164529, 0.0669633, 0.590472, 0.15184),
    ),
)

TABLE1_REFERENCE = {
    "independent": {"I_d(S1,S2)": 0.72, "I_d(S2,S1)": 0.66},
    "positive": {"S1": (0.26, 0.56, 0.18), "S2": (0.35, 0.5, 0.15)},
    "negative": {"S1": (0.35, 0.25, 0.4), "S2": (0.38, 0.18, 0.44)},
}
TABLE1_SEED = 0
TABLE1_SEEDS = tuple(range(10))

TABLE3_TOL = 1e-9
TABLE4_TOL = 5e-7
SWEEP_TOL = 1e-12


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.label}" + (f": {self.detail}" if self.detail else "")


def numeric_check(label: str, expected: float, actual: float, tol: float) -> Check:
    # A relative 1e-9 slack on the tolerance absorbs float noise when the exact
    # error sits on the boundary (a value printed to six digits after rounding down).
    err = abs(actual - expected)
    return Check(label, err <= tol * (1 + 1e-9), f"expected {expected:.9g}, got {actual:.9g} (|err|={err:.2e}, tol {tol:g})")


@dataclass
class Reproduction:
    title: str
    text: str
    checks: list[Check] = field(default_factory=list)
    csv: str | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def fmt(x: float) -> str:
    return f"{x:.6g}"


def _column_checks(name: str, m: MassFunction, expected: Sequence[float], tol: float) -> list[Check]:
    return [
        numeric_check(f"{name} {fname}", exp, m[bits], tol)
        for bits, fname, exp in zip(FOCAL_ORDER, FOCAL_NAMES, expected)
    ]


def _table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    rows = [list(header)] + [list(r) for r in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _cell(x: float) -> str:
    return fmt(x) if x else ""


def table2() -> Reproduction:
    m1 = example_m1()
    pf = ProductFrame(EXAMPLE_FRAME, DEPENDENCE_FRAME)
    ext = vacuous_extension(example_dependence(), pf)
    dec_i = decondition_to_product(m1, DEP_I, pf)
    dec_n = decondition_to_product(categorical(EXAMPLE_FRAME, 0), DEP_N, pf)
    joint = conjunctive(conjunctive(ext, dec_i), dec_n)
    r = pf.rect
    rest_i = r(OMEGA, DEP_NOT_I)
    rows = [
        ("∅", 0, (0, 0, 0, 0.18)),
        ("ω1×I", r(W1, DEP_I), (0, 0, 0, 0.052)),
        ("(ω1∪ω2)×I", r(W12, DEP_I), (0, 0, 0, 0.13)),
        ("Ω×I", r(OMEGA, DEP_I), (0.26, 0, 0, 0.078)),
        ("Ω×P", r(OMEGA, DEP_P), (0.56, 0, 0, 0.56)),
        ("(ω1×I)∪(Ω×P)", r(W1, DEP_I) | r(OMEGA, DEP_P), (0, 0, 0, 0)),
        ("((ω1∪ω2)×I)∪(Ω×P)", r(W12, DEP_I) | r(OMEGA, DEP_P), (0, 0, 0, 0)),
        ("Ω×Pbar", r(OMEGA, DEP_N), (0.18, 0, 0, 0)),
        ("Ω×(I∪P)", r(OMEGA, DEP_I | DEP_P), (0, 0, 1.0, 0)),
        ("(ω1×I)∪(Ω×(P∪Pbar))", r(W1, DEP_I) | rest_i, (0, 0.2, 0, 0)),
        ("((ω1∪ω2)×I)∪(Ω×(P∪Pbar))", r(W12, DEP_I) | rest_i, (0, 0.5, 0, 0)),
        ("Ω×Pos", pf.full, (0, 0.3, 0, 0)),
    ]
    columns = (("m^Pos↑", ext), ("m[I]⇑", dec_i), ("m[Pbar]⇑", dec_n), ("m_Conj", joint))
    checks = []
    body = []
    for name, bits, expected in rows:
        body.append([name] + [_cell(m[bits]) for _, m in columns])
        for (cname, m), exp in zip(columns, expected):
            checks.append(numeric_check(f"{cname} on {name}", exp, m[bits], TABLE3_TOL))
    listed = {bits for _, bits, _ in rows}
    for cname, m in columns:
        stray = [b for b in m if b not in listed]
        checks.append(Check(f"{cname} has no focal outside the table", not stray, f"{len(stray)} extra"))
    text = _table(["focal"] + [c for c, _ in columns], body)
    return Reproduction("Table 2: masses on Ω×Pos", text, checks)


def table3() -> Reproduction:
    m1_adj = independence_adjust(example_m1(), example_dependence())
    m2 = example_m2()
    combined = conjunctive(m1_adj, m2)
    checks = (
        _column_checks("m1 marginal", m1_adj, TABLE3_MARGINAL, TABLE3_TOL)
        + _column_checks("m2", m2, TABLE3_M2, TABLE3_TOL)
        + _column_checks("m1 marginal ⊙ m2", combined, TABLE3_COMBINED, TABLE3_TOL)
    )
    body = [
        [name, _cell(m1_adj[b]), _cell(m2[b]), _cell(combined[b])]
        for b, name in zip(FOCAL_ORDER, FOCAL_NAMES)
    ]
    text = _table(["focal", "m1 marginal", "m2", "m1 marginal ⊙ m2"], body)
    return Reproduction("Table 3: marginalization and combination", text, checks)


def table4() -> Reproduction:
    m1, m2 = example_m1(), example_m2()
    checks = []
    blocks = []
    for i, case_i in enumerate(TABLE4_CASES_I):
        adj1 = independence_adjust(m1, swept_dependence_mass(*case_i))
        checks += _column_checks(f"case i={case_i} m1", adj1, TABLE4_M1[i], TABLE4_TOL)
        cols = [adj1]
        header = ["focal", "m1"]
        for j, case_j in enumerate(TABLE4_CASES_J):
            adj2 = independence_adjust(m2, swept_dependence_mass(*case_j))
            combined = conjunctive(adj1, adj2)
            checks += _column_checks(f"case i={case_i} j={case_j} m2", adj2, TABLE4_M2[j], TABLE4_TOL)
            checks += _column_checks(
                f"case i={case_i} j={case_j} m1∩2", combined, TABLE4_COMBINED[i][j], TABLE4_TOL
            )
            cols += [adj2, combined]
            header += [f"m2 j{j + 1}", f"m1∩2 j{j + 1}"]
        title = "S_i: α={} β={} γ={}".format(*case_i)
        body = [[name] + [_cell(c[b]) for c in cols] for b, name in zip(FOCAL_ORDER, FOCAL_NAMES)]
        blocks.append(title + "\n" + _table(header, body))
    cases = "  ".join(f"j{j + 1}: α={a} β={b} γ={g}" for j, (a, b, g) in enumerate(TABLE4_CASES_J))
    return Reproduction("Table 4: combination under (in)dependence hypotheses", cases + "\n\n" + "\n\n".join(blocks), checks)


def run_scenario(scenario: str, seed: int, n: int = 100, frame_size: int = 5) -> IndependenceReport:
    s1, s2 = generate(GenConfig(frame_size=frame_size, n=n, seed=seed, scenario=scenario))
    return analyze(s1, s2, AnalysisConfig(n_clusters=frame_size, seed=seed))


def table1(seed: int = TABLE1_SEED, seeds: Sequence[int] = TABLE1_SEEDS) -> Reproduction:
    start = time.perf_counter()
    reports = {sc: run_scenario(sc, seed) for sc in ("independent", "positive", "negative")}
    ind = reports["independent"]
    lines = [f"n=100, |Ω|=5, C=5, seed={seed}; reference values in brackets", ""]
    lines.append("Independent sources")
    for d, key in zip(ind.directions, ("I_d(S1,S2)", "I_d(S2,S1)")):
        lines.append(
            f"  I_d(S{d.source},S{d.other})={d.i_d:.2f}, notI_d={d.not_i_d:.2f}  [{TABLE1_REFERENCE['independent'][key]}]"
        )
    for sc, label in (("positive", "Positive dependence"), ("negative", "Negative dependence")):
        lines.append(label)
        for d in reports[sc].directions:
            ref = TABLE1_REFERENCE[sc][f"S{d.source}"]
            lines.append(
                f"  m^{{Pos,{d.source}}}(I)={d.betp_i:.2f}, (P)={d.betp_p:.2f}, (Pbar)={d.betp_n:.2f}"
                f"  [{ref[0]}, {ref[1]}, {ref[2]}]"
            )
    checks = [
        Check(f"independent I_d(S{d.source},S{d.other}) > 0.5", d.i_d > 0.5, f"{d.i_d:.4f}") for d in ind.directions
    ]
    for sc, target in (("positive", "P"), ("negative", "Pbar")):
        for d in reports[sc].directions:
            checks.append(
                Check(
                    f"{sc} argmax(S{d.source} vs S{d.other}) = {target}",
                    d.dependence_argmax() == target,
                    f"I={d.betp_i:.3f} P={d.betp_p:.3f} Pbar={d.betp_n:.3f}",
                )
            )
    ids = []
    for s in seeds:
        rep = run_scenario("independent", s)
        ids += [d.i_d for d in rep.directions]
    mean_id = float(np.mean(ids))
    checks.append(Check(f"mean independent I_d over {len(seeds)} seeds in [0.55, 0.9]", 0.55 <= mean_id <= 0.9, f"{mean_id:.4f}"))
    lines.append("")
    lines.append(f"mean independent I_d over seeds {list(seeds)}: {mean_id:.3f}  [0.72 / 0.66]")
    lines.append(f"elapsed: {time.perf_counter() - start:.2f} s")
    return Reproduction("Table 1: estimated (in)dependence of generated sources", "\n".join(lines), checks)


def parse_grid(spec: str) -> list[float]:
    """Inclusive grid from ``"start:stop:step"``."""
    try:
        start, stop, step = (float(p) for p in spec.split(":"))
    except ValueError as exc:
        raise ValueError(f"malformed grid {spec!r}; expected start:stop:step") from exc
    if step <= 0 or stop < start:
        raise ValueError(f"grid {spec!r} needs step > 0 and start <= stop")
    count = int(round((stop - start) / step)) + 1
    return [round(start + k * step, 12) for k in range(count) if start + k * step <= stop + 1e-12]


def sweep(
    m: MassFunction,
    alphas: Sequence[float],
    betas: Sequence[float],
    gammas: Sequence[float],
) -> list[tuple[float, float, float, MassFunction]]:
    return [
        (a, b, g, independence_adjust(m, swept_dependence_mass(a, b, g)))
        for a, b, g in itertools.product(alphas, betas, gammas)
    ]


def sweep_columns(m: MassFunction) -> list[int]:
    """Subsets that can carry mass after adjustment: ∅, Ω and the focals of m."""
    return sorted({0, m.frame.full} | set(m.focals))


def sweep_csv(m: MassFunction, rows: Sequence[tuple[float, float, float, MassFunction]]) -> str:
    columns = sweep_columns(m)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alpha", "beta", "gamma"] + [f"m({m.frame.format(b)})" for b in columns])
    for a, b, g, adj in rows:
        writer.writerow([repr(a), repr(b), repr(g)] + [repr(adj[c]) for c in columns])
    return buf.getvalue()


def figure1(step: float = 0.05) -> Reproduction:
    m = dogmatic_example()
    grid = parse_grid(f"0:1:{step}")
    rows = sweep(m, [1.0], grid, grid)
    empty = {(b, g): adj[0] for _, b, g, adj in rows}
    worst = max(abs(empty[b, g] - b * g) for b, g in empty)
    mono_beta = all(empty[grid[k], g] <= empty[grid[k + 1], g] for g in grid for k in range(len(grid) - 1))
    mono_gamma = all(empty[b, grid[k]] <= empty[b, grid[k + 1]] for b in grid for k in range(len(grid) - 1))
    checks = [
        Check("m'(∅) = β·γ at α=1 for a dogmatic mass", worst <= SWEEP_TOL, f"max |err| = {worst:.2e}"),
        Check("m'(∅) non-decreasing in β", mono_beta),
        Check("m'(∅) non-decreasing in γ", mono_gamma),
    ]
    text = f"mass on ∅ after adjustment, α=1, β and γ over {grid[0]}..{grid[-1]} step {step}; input {m}"
    return Reproduction("Figure 1: mass on ∅", text, checks, sweep_csv(m, rows))


def figure2(step: float = 0.05) -> Reproduction:
    m = dogmatic_example()
    grid = parse_grid(f"0:1:{step}")
    rows = sweep(m, grid, grid, [1.0])
    worst = max(adj.max_abs_diff(closed_form_adjust(m, swept_dependence_mass(a, b, g))) for a, b, g, adj in rows)
    stated = max(abs(adj[m.frame.full] - a * (1 - b)) for a, b, _, adj in rows)
    checks = [Check("pipeline equals closed form over the (α, β) grid at γ=1", worst <= SWEEP_TOL, f"max |err| = {worst:.2e}")]
    text = (
        f"mass on Ω after adjustment, γ=1, α and β over {grid[0]}..{grid[-1]} step {step}; input {m}\n"
        f"note: the derived mass on Ω is 0 for a dogmatic input at γ=1; the reference "
        f"expression α(1-β) differs by up to {stated:.3f} and is not used as a check"
    )
    return Reproduction("Figure 2: mass on Ω", text, checks, sweep_csv(m, rows))


TABLES = {1: table1, 2: table2, 3: table3, 4: table4}
FIGURES = {1: figure1, 2: figure2}
