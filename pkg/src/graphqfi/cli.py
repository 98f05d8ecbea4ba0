"""Command-line entry point: ``graphqfi <subcommand> ...``.

Exit status is 0 on success, 1 on bad input and 2 when a verification
suite exceeds its tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Sequence, TextIO

from .counting import CountingError, metrology_bound, stabilizer_state_count
from .graph import Graph, GraphError, build_bundle, bundled_family, load_graph, parse_family, partition
from .kernels import ConvergenceError
from .measurement import MeasurementError, expectation_curve, plan_measurement, precision_curve
from .noise import (
    ERASURE_MODELS,
    qfi_dephasing_approx,
    qfi_dephasing_exact,
    qfi_erasure_average_exact,
    qfi_erasure_cyclic_formula,
    qfi_erasure_pattern,
    qfi_erasure_pattern_lset,
    qfi_erasure_star_formula,
)
from .oracle import (
    OracleError,
    apply_dephasing,
    apply_twin_clifford,
    density_from_state,
    graph_state_vector,
    partial_trace,
    qfi_mixed,
    qfi_pure,
)
from .pauli import PauliError, PauliOperator
from .qfi import FormulaError, qfi_graph, qfi_graph_lc
from .verification import SUITES, run_suite, twin_vertices

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2
GRID_EPS = 1e-12
INPUT_ERRORS = (
    GraphError,
    FormulaError,
    OracleError,
    MeasurementError,
    CountingError,
    PauliError,
    ConvergenceError,
    OSError,
)


class CliError(ValueError):
    pass


@dataclass(frozen=True)
class SweepRecord:
    parameter: float
    value: float
    method: str
    graph_id: str


def emit_csv(records: Sequence[SweepRecord], dest: TextIO) -> None:
    if not records:
        raise CliError("no records to write")
    for a, b in zip(records, records[1:]):
        if b.parameter < a.parameter:
            raise CliError("unsorted sweep")
    for r in records:
        if math.isnan(r.parameter) or math.isnan(r.value):
            raise CliError(f"NaN in sweep record {r}")
    dest.write("parameter,value,method,graph_id\n")
    for r in records:
        dest.write(f"{r.parameter:.12g},{r.value:.12g},{r.method},{r.graph_id}\n")


def parse_grid(text: str) -> list[float]:
    """``start:stop:step``, endpoints inclusive; a bare number is a one-point grid."""
    try:
        parts = [float(t) for t in text.split(":")]
    except ValueError as exc:
        raise CliError(f"bad grid {text!r}") from exc
    if len(parts) == 1:
        return parts
    if len(parts) != 3:
        raise CliError(f"grid must be start:stop:step, got {text!r}")
    start, stop, step = parts
    if step <= 0 or stop < start:
        raise CliError(f"grid needs step > 0 and stop >= start, got {text!r}")
    count = int(math.floor((stop - start) / step + GRID_EPS)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else f"{v:.12g}"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="graph JSON file")
    src.add_argument("--family", help="named family, e.g. star:10, grid:2,3, bundled-cycle:5,24")


def _load(args) -> tuple[Graph, str]:
    if args.graph:
        return load_graph(args.graph), Path(args.graph).stem
    label = args.family
    if label.startswith("bundled-"):
        name, _, rest = label[len("bundled-"):].partition(":")
        try:
            k, j = (int(t) for t in rest.split(","))
        except ValueError as exc:
            raise CliError(f"bundled family needs k,j: {label!r}") from exc
        return bundled_family(name, k, j), label.replace(":", "_").replace(",", "_")
    return parse_family(label), label.replace(":", "_").replace(",", "_")


# ---------------------------------------------------------------- commands


def cmd_qfi(args) -> int:
    g, _ = _load(args)
    print(f"Q = {_fmt(qfi_graph(g).value)}")
    if args.lc:
        print(f"Q_lc = {_fmt(qfi_graph_lc(g).value)}")
    if args.oracle:
        psi = graph_state_vector(g)
        print(f"Q_oracle = {qfi_pure(psi):.12g}")
        if args.lc:
            print(f"Q_lc_oracle = {qfi_pure(apply_twin_clifford(psi, twin_vertices(g))):.12g}")
    return EXIT_OK


def cmd_partition(args) -> int:
    g, _ = _load(args)
    rep = partition(g)
    for title, classes in (("open", rep.open_classes), ("closed", rep.closed_classes)):
        print(f"{title} classes: {len(classes)}")
        for c in classes:
            print(f"  size {c.size}: members {sorted(c.members)} neighbourhood {sorted(c.shared_neighborhood)}")
    return EXIT_OK


def cmd_bundle(args) -> int:
    base = load_graph(args.base) if Path(args.base).exists() else parse_family(args.base)
    try:
        sizes = [int(t) for t in args.sizes.split(",")]
    except ValueError as exc:
        raise CliError(f"bad sizes {args.sizes!r}") from exc
    text = build_bundle(base, sizes).graph.to_json() + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_dephase(args) -> int:
    g, gid = _load(args)
    grid = parse_grid(args.p_grid)
    if args.oracle:
        psi = graph_state_vector(g)
        records = [SweepRecord(p, qfi_mixed(apply_dephasing(psi, p)), "oracle", gid) for p in grid]
    elif args.approx:
        records = [SweepRecord(p, qfi_dephasing_approx(g, p).value, "approx", gid) for p in grid]
    else:
        records = [SweepRecord(p, qfi_dephasing_exact(g, p).value, "exact", gid) for p in grid]
    with _sink(args) as out:
        emit_csv(records, out)
    return EXIT_OK


def _erasure_value(args, g: Graph, e: int) -> tuple[float, str]:
    if args.formula:
        if args.bundles is None:
            raise CliError("--formula needs --bundles K")
        fn = qfi_erasure_star_formula if args.formula == "star" else qfi_erasure_cyclic_formula
        return fn(g.n, args.bundles, e), f"formula-{args.formula}"
    if args.oracle:
        rho = density_from_state(graph_state_vector(g))
        vals = [qfi_mixed(partial_trace(rho, s)) for s in combinations(range(g.n), e)]
        return sum(vals) / len(vals), "oracle"
    return qfi_erasure_average_exact(g, e, args.model), f"exact-{args.model}"


def cmd_erase(args) -> int:
    g, gid = _load(args)
    if args.pattern is not None:
        try:
            sites = [int(t) for t in args.pattern.split(",")]
        except ValueError as exc:
            raise CliError(f"bad pattern {args.pattern!r}") from exc
        fn = qfi_erasure_pattern if args.model == "trace" else qfi_erasure_pattern_lset
        print(f"Q = {_fmt(fn(g, sites).value)}")
        return EXIT_OK
    if args.e_max is None:
        raise CliError("erase needs --e-max or --pattern")
    if not 1 <= args.e_max < g.n:
        raise CliError(f"--e-max must lie in [1, {g.n - 1}]")
    records = []
    for e in range(1, args.e_max + 1):
        value, method = _erasure_value(args, g, e)
        records.append(SweepRecord(e, value, method, gid))
    with _sink(args) as out:
        emit_csv(records, out)
    return EXIT_OK


def cmd_measure(args) -> int:
    g, _ = _load(args)
    s = PauliOperator.from_string(args.stabilizer) if args.stabilizer else None
    plan = plan_measurement(g, s)
    thetas = parse_grid(args.thetas)
    exp = expectation_curve(plan, thetas)
    var = precision_curve(plan, thetas)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "expectation", "precision"])
    for t, e, v in zip(thetas, exp, var):
        w.writerow([f"{t:.12g}", f"{e:.12g}", f"{v:.12g}"])
    with _sink(args) as out:
        out.write(plan.describe() + "\n")
        out.write(buf.getvalue())
    return EXIT_OK


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    status = EXIT_OK
    for name in names:
        res = run_suite(name, args.max_n)
        verdict = "<=" if res.passed else ">"
        print(f"{name}: {res.cases} cases, max deviation {res.max_deviation:.3e} (worst {res.worst})")
        print(f"{name}: max deviation {verdict} {res.tolerance:g}")
        if not res.passed:
            status = EXIT_VERIFY
    return status


def cmd_count(args) -> int:
    n = args.n
    total = stabilizer_state_count(n)
    print(f"N_{n} = {total} (~{float(total):.6e})")
    if args.epsilon is not None:
        b = metrology_bound(n, args.epsilon)
        print(f"k = {b.k}")
        print(f"useful (full sum) = {b.full} (~{float(b.full):.6e})")
        print(f"useful (single term) = {b.simple} (~{float(b.simple):.6e})")
    return EXIT_OK


class _sink:
    def __init__(self, args):
        self.path = getattr(args, "out", None)

    def __enter__(self) -> TextIO:
        self.fh = open(self.path, "w", newline="") if self.path else sys.stdout
        return self.fh

    def __exit__(self, *exc):
        if self.path:
            self.fh.close()
        return False


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphqfi", description="QFI of graph and stabilizer states")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("qfi", help="noiseless QFI of a graph state")
    _add_graph_args(p)
    p.add_argument("--lc", action="store_true", help="also report the twin local-Clifford value")
    p.add_argument("--oracle", action="store_true", help="also report the statevector value")
    p.set_defaults(func=cmd_qfi)

    p = sub.add_parser("partition", help="open and closed neighbourhood classes")
    _add_graph_args(p)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("bundle", help="write a bundled graph as JSON")
    p.add_argument("--base", required=True, help="base graph JSON file or family label")
    p.add_argument("--sizes", required=True, help="comma-separated bundle sizes")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bundle)

    p = sub.add_parser("dephase", help="QFI sweep under iid dephasing")
    _add_graph_args(p)
    p.add_argument("--p-grid", required=True, help="start:stop:step, inclusive")
    m = p.add_mutually_exclusive_group()
    m.add_argument("--exact", action="store_true", help="closed form (default)")
    m.add_argument("--approx", action="store_true", help="large-neighbourhood approximation")
    m.add_argument("--oracle", action="store_true", help="dense density-matrix reference")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dephase)

    p = sub.add_parser("erase", help="average QFI after e erasures")
    _add_graph_args(p)
    p.add_argument("--e-max", type=int, help="sweep e = 1..E")
    p.add_argument("--pattern", help="single pattern, comma-separated sites")
    m = p.add_mutually_exclusive_group()
    m.add_argument("--exact", action="store_true", help="enumerate all patterns (default)")
    m.add_argument("--oracle", action="store_true", help="partial-trace reference")
    m.add_argument("--formula", choices=("star", "cycle"), help="bundled closed form")
    p.add_argument("--bundles", type=int, help="bundle count k for --formula")
    p.add_argument("--model", choices=ERASURE_MODELS, default="trace")
    p.add_argument("--out")
    p.set_defaults(func=cmd_erase)

    p = sub.add_parser("measure", help="local measurement plan and precision curve")
    _add_graph_args(p)
    p.add_argument("--stabilizer", help="stabilizer to build on, e.g. ZXZ")
    p.add_argument("--thetas", default="0.005:0.05:0.005")
    p.add_argument("--out")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("verify", help="formula-vs-oracle suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--max-n", type=int, default=6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="stabilizer-state counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=float)
    p.set_defaults(func=cmd_count)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
