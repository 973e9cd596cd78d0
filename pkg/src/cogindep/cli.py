"""Command-line front end.

Exit codes: 0 success, 1 golden mismatch, 2 bad flags, 3 I/O failure,
4 data mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from pathlib import Path
from typing import Sequence

from . import experiments
from .core import MassFunction, conjunctive, disjunctive, mean_combine
from .datagen import SCENARIOS, GenConfig, generate
from .errors import BeliefError, FrameMismatchError, LengthMismatchError, NotADerangementError
from .independence import ALPHA_POLICIES, AnalysisConfig, IndependenceReport, analyze, dependence_mass, swept_dependence_mass
from .io import FormatError, dataset_record, dumps, read_record, write_dataset, write_text_atomic
from .product import independence_adjust

log = logging.getLogger("cogindep")

EXIT_OK, EXIT_GOLDEN, EXIT_FLAGS, EXIT_IO, EXIT_DATA = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _unit(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{value} outside [0, 1]")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} must be at least 1")
    return value


def _read(path: str):
    try:
        return read_record(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO)
    except FormatError as exc:
        raise CliError(str(exc), EXIT_DATA)
    except BeliefError as exc:
        raise CliError(f"{path}: {exc}", EXIT_DATA)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        write_text_atomic(out, text)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc.strerror or exc}", EXIT_IO)


def cmd_generate(args: argparse.Namespace) -> int:
    contradiction = tuple(int(k) for k in args.contradiction.split(",")) if args.contradiction else ()
    try:
        config = GenConfig(args.frame_size, args.n, args.seed, args.scenario, contradiction)
    except (ValueError, NotADerangementError) as exc:
        raise CliError(str(exc), EXIT_FLAGS)
    start = time.perf_counter()
    s1, s2 = generate(config)
    paths = [Path(f"{args.out}_s1.json"), Path(f"{args.out}_s2.json")]
    for path, masses, name in zip(paths, (s1, s2), ("S1", "S2")):
        try:
            write_dataset(path, masses, name)
        except OSError as exc:
            raise CliError(f"cannot write {path}: {exc.strerror or exc}", EXIT_IO)
        print(path)
    log.info("generated %d masses per source in %.3f s", args.n, time.perf_counter() - start)
    return EXIT_OK


def render_report(report: IndependenceReport, fmt: str) -> str:
    if fmt == "json":
        return dumps(report.to_dict())
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["source", "other", "I_d", "notI_d", "m_I", "m_P", "m_Pbar", "m_IP", "m_IPbar", "BetP_I", "BetP_P", "BetP_Pbar"]
        )
        for d in report.directions:
            dep = d.to_dict()["dependence_mass"]
            writer.writerow(
                [f"S{d.source}", f"S{d.other}", d.i_d, d.not_i_d, dep["I"], dep["P"], dep["Pbar"], dep["I+P"], dep["I+Pbar"], d.betp_i, d.betp_p, d.betp_n]
            )
        return buf.getvalue()
    p1, _ = report.partitions
    lines = [f"n={p1.n_objects}, C={p1.n_clusters}, seed={report.config.seed}, alpha policy={report.config.alpha_policy}", ""]
    lines.append("Independence degrees")
    for d in report.directions:
        lines.append(f"  I_d(S{d.source},S{d.other})={d.i_d:.2f}, notI_d(S{d.source},S{d.other})={d.not_i_d:.2f}")
    lines.append("Dependence masses (pignistic)")
    for d in report.directions:
        lines.append(
            f"  m^{{Pos,{d.source}}}(I)={d.betp_i:.2f}, m^{{Pos,{d.source}}}(P)={d.betp_p:.2f}, "
            f"m^{{Pos,{d.source}}}(Pbar)={d.betp_n:.2f}   -> {d.dependence_argmax()}"
        )
    lines.append("Matched clusters")
    for d in report.directions:
        pairs = ", ".join(f"({a},{b}) β={lk.beta:.2f} Conf={lk.conf:.2f}" for lk in d.links for a, b in [lk.pair])
        lines.append(f"  S{d.source}->S{d.other}: {pairs}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args: argparse.Namespace) -> int:
    _, masses1, _ = _read(args.source1)
    _, masses2, _ = _read(args.source2)
    if len(masses1) != len(masses2):
        raise CliError(f"datasets are misaligned: {len(masses1)} vs {len(masses2)} masses", EXIT_DATA)
    if masses1[0].frame != masses2[0].frame:
        raise CliError("datasets use different frames", EXIT_DATA)
    config = AnalysisConfig(n_clusters=args.clusters, seed=args.seed, alpha_policy=args.alpha_policy)
    start = time.perf_counter()
    try:
        report = analyze(masses1, masses2, config)
    except LengthMismatchError as exc:
        raise CliError(str(exc), EXIT_DATA)
    except BeliefError as exc:
        raise CliError(str(exc), EXIT_FLAGS)
    log.info("analysis took %.3f s", time.perf_counter() - start)
    _emit(render_report(report, args.format), args.out)
    return EXIT_OK


def _dependence_from_args(args: argparse.Namespace) -> MassFunction:
    explicit = [args.I, args.P, args.N, args.IP, args.IN]
    swept = [args.alpha, args.beta, args.gamma]
    if any(v is not None for v in explicit):
        if any(v is not None for v in swept):
            raise CliError("give either --I/--P/--N[/--IP/--IN] or --alpha/--beta/--gamma, not both", EXIT_FLAGS)
        values = [v or 0.0 for v in explicit]
        try:
            return dependence_mass(*values)
        except BeliefError as exc:
            raise CliError(f"invalid dependence mass: {exc}", EXIT_FLAGS)
    if all(v is not None for v in swept):
        return swept_dependence_mass(*swept)
    raise CliError("need a dependence mass (--I/--P/--N) or all of --alpha/--beta/--gamma", EXIT_FLAGS)


def _record(masses: Sequence[MassFunction], is_dataset: bool) -> str:
    return dumps(dataset_record(masses) if is_dataset else masses[0].to_dict())


def cmd_adjust(args: argparse.Namespace) -> int:
    m_dep = _dependence_from_args(args)
    _, masses, is_dataset = _read(args.input)
    adjusted = [independence_adjust(m, m_dep) for m in masses]
    _emit(_record(adjusted, is_dataset), args.out)
    return EXIT_OK


RULES = {"conjunctive": conjunctive, "disjunctive": disjunctive}


def cmd_combine(args: argparse.Namespace) -> int:
    records = [_read(path) for path in args.inputs]
    lengths = {len(masses) for _, masses, _ in records}
    if len(lengths) != 1:
        raise CliError("inputs hold different numbers of mass functions", EXIT_DATA)
    if len({frame for frame, _, _ in records}) != 1:
        raise CliError("inputs use different frames", EXIT_DATA)
    combined = []
    try:
        for column in zip(*(masses for _, masses, _ in records)):
            if args.rule == "mean":
                combined.append(mean_combine(list(column)))
            else:
                acc = column[0]
                for m in column[1:]:
                    acc = RULES[args.rule](acc, m)
                combined.append(acc)
    except FrameMismatchError as exc:
        raise CliError(str(exc), EXIT_DATA)
    _emit(_record(combined, records[0][2]), args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        grid = experiments.parse_grid(args.grid)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_FLAGS)
    if grid[0] < 0.0 or grid[-1] > 1.0:
        raise CliError(f"grid {args.grid!r} leaves [0, 1]", EXIT_FLAGS)
    if args.mass:
        _, masses, is_dataset = _read(args.mass)
        if is_dataset:
            raise CliError("--mass expects a single mass-function record", EXIT_DATA)
        m = masses[0]
    else:
        m = experiments.dogmatic_example()
    axes = [[v] if v is not None else grid for v in (args.alpha, args.beta, args.gamma)]
    rows = experiments.sweep(m, *axes)
    _emit(experiments.sweep_csv(m, rows), args.out)
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace) -> int:
    if args.table is not None:
        rep = experiments.TABLES[args.table]()
    else:
        rep = experiments.FIGURES[args.figure]()
    if rep.csv is not None and args.format == "csv":
        _emit(rep.csv, args.out)
    else:
        if rep.csv is not None and args.out:
            _emit(rep.csv, args.out)
        print(rep.title)
        print(rep.text)
        print()
    failed = [c for c in rep.checks if not c.passed]
    for c in rep.checks:
        if args.verbose or not c.passed:
            print(c.line(), file=sys.stderr)
    print(f"{len(rep.checks) - len(failed)}/{len(rep.checks)} checks passed", file=sys.stderr)
    return EXIT_GOLDEN if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cogindep", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate two aligned random sources")
    p.add_argument("--frame-size", type=_positive_int, default=5)
    p.add_argument("--n", type=_positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scenario", choices=SCENARIOS, default="independent")
    p.add_argument("--contradiction", help="comma-separated derangement of element indices (default cyclic shift)")
    p.add_argument("--out", default="dataset", help="output prefix; writes PREFIX_s1.json and PREFIX_s2.json")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="estimate the (in)dependence of two sources")
    p.add_argument("source1")
    p.add_argument("source2")
    p.add_argument("--clusters", type=_positive_int, default=None, help="number of clusters (default: frame size)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha-policy", choices=ALPHA_POLICIES, default="one")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("adjust", help="fold a dependence mass into mass functions")
    p.add_argument("input", help="mass-function or dataset file")
    for flag in ("--I", "--P", "--N", "--IP", "--IN"):
        p.add_argument(flag, type=_unit, default=None, dest=flag[2:])
    p.add_argument("--alpha", type=_unit)
    p.add_argument("--beta", type=_unit)
    p.add_argument("--gamma", type=_unit)
    p.add_argument("--out")
    p.set_defaults(func=cmd_adjust)

    p = sub.add_parser("combine", help="combine mass functions (or datasets object by object)")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--rule", choices=("conjunctive", "disjunctive", "mean"), default="conjunctive")
    p.add_argument("--out")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("sweep", help="CSV of adjusted masses over an (alpha, beta, gamma) grid")
    p.add_argument("--grid", default="0:1:0.1", help="start:stop:step for every axis not fixed below")
    p.add_argument("--mass", help="mass-function file (default: a dogmatic mass on 3 elements)")
    p.add_argument("--alpha", type=_unit)
    p.add_argument("--beta", type=_unit)
    p.add_argument("--gamma", type=_unit)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("reproduce", help="rerun a reference table or figure and diff against pinned values")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--table", type=int, choices=sorted(experiments.TABLES))
    group.add_argument("--figure", type=int, choices=sorted(experiments.FIGURES))
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out", help="write the figure CSV here")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"cogindep: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
