"""Command-line front end: ``cubicdecomp {decide,verify,reduce,gen,sat}``.

Exit codes: 0 YES/valid/SAT, 1 NO/invalid/UNSAT, 2 usage or I/O error,
3 search budget exhausted (printed as UNKNOWN).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from .errors import DecompError
from .exact import Outcome, SolverConfig, default_workers, solve
from .fileio import (
    format_decomposition,
    format_graph,
    format_marks,
    parse_cnf,
    parse_decomposition,
    parse_graph,
    parse_marks,
    read_text,
)
from .graph import NAMED_GRAPHS, is_connected, named_graph, random_cubic
from .model import FAMILIES, MarkedInstance, verify, verify_marked
from .poly import decide_family
from .reductions import STAGES, SatMode, brute_sat, reduce_formula

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 already; keep the stream tidy
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubicdecomp", description="Decompose cubic graphs into claws, triangles and P4s.")
    p.add_argument("-v", "--verbose", action="store_true", help="log decider internals to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decide", help="decide decomposability for a family")
    d.add_argument("--family", choices=sorted(FAMILIES), required=True)
    d.add_argument("--input", required=True, help=".edg graph file")
    d.add_argument("--marks", help="marks file (implies the exact solver)")
    d.add_argument("--exact", action="store_true", help="use the exact solver even for tractable families")
    d.add_argument("--budget", type=int, default=SolverConfig.node_budget, help="node budget for the exact solver")
    d.add_argument("--time-budget", type=float, default=SolverConfig.time_budget, help="seconds")
    d.add_argument("--threads", type=int, default=None, help="solver workers (default: $DECOMP_THREADS or 1)")
    d.add_argument("--out", help="write the certificate to this file")

    v = sub.add_parser("verify", help="check a decomposition file")
    v.add_argument("--input", required=True)
    v.add_argument("--decomposition", required=True)
    v.add_argument("--family", choices=sorted(FAMILIES), default="all")
    v.add_argument("--marks")

    r = sub.add_parser("reduce", help="build a hardness-reduction instance from a CNF")
    r.add_argument("--from", dest="source", choices=[m.value for m in SatMode], required=True)
    r.add_argument("--cnf", required=True)
    r.add_argument("--stage", choices=STAGES, default="final")
    r.add_argument("--out", required=True, help="output prefix for .edg, .marks and .map.json")

    g = sub.add_parser("gen", help="write a named or random cubic graph")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--name", choices=NAMED_GRAPHS)
    src.add_argument("--random", nargs=2, type=int, metavar=("N", "SEED"))
    g.add_argument("--out", help="file to write (default: stdout)")

    s = sub.add_parser("sat", help="brute-force a positive 3-CNF")
    s.add_argument("--mode", choices=[m.value for m in SatMode], required=True)
    s.add_argument("--cnf", required=True)
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_decide(args: argparse.Namespace) -> int:
    g = parse_graph(read_text(args.input))
    allowed = FAMILIES[args.family]
    marks = parse_marks(read_text(args.marks), g) if args.marks else None
    threads = args.threads if args.threads is not None else default_workers()
    cfg = SolverConfig(args.budget, args.time_budget, workers=max(1, threads))
    tractable = args.family not in ("k13p4", "all")
    if args.exact or marks is not None or not tractable or not (g.is_cubic() and is_connected(g)):
        res = solve(g, allowed, marks, cfg)
        if res.outcome is Outcome.BUDGET_EXCEEDED:
            print(f"UNKNOWN budget exceeded after {res.nodes} nodes")
            return EXIT_BUDGET
        cert = res.decomposition
    else:
        cert = decide_family(g, allowed, cfg)
    if cert is None:
        print("NO")
        return EXIT_NO
    print("YES")
    text = format_decomposition(cert)
    if args.out:
        Path(args.out).write_text(text)
        print(f"certificate: {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_verify(args: argparse.Namespace) -> int:
    g = parse_graph(read_text(args.input))
    d = parse_decomposition(read_text(args.decomposition))
    allowed = FAMILIES[args.family]
    if args.marks:
        report = verify_marked(MarkedInstance(g, parse_marks(read_text(args.marks), g)), d, allowed)
    else:
        report = verify(g, d, allowed)
    if report.valid:
        print("VALID")
        return EXIT_YES
    print("INVALID")
    for msg in report.violations:
        print(f"  {msg}")
    return EXIT_NO


def cmd_reduce(args: argparse.Namespace) -> int:
    phi = parse_cnf(read_text(args.cnf))
    out = reduce_formula(phi, SatMode(args.source), args.stage)
    if out is None:
        print("TRIVIALLY-NO degree-2 vertices left after net saturation")
        return EXIT_NO
    g, marks, rmap = out
    prefix = Path(args.out)
    Path(f"{prefix}.edg").write_text(format_graph(g))
    Path(f"{prefix}.marks").write_text(format_marks(marks))
    Path(f"{prefix}.map.json").write_text(json.dumps(rmap.to_json(), indent=1, sort_keys=True) + "\n")
    print(f"vertices {g.n} edges {g.m} marks {len(marks)}")
    return EXIT_YES


def cmd_gen(args: argparse.Namespace) -> int:
    g = named_graph(args.name) if args.name else random_cubic(*args.random)
    _emit(format_graph(g), args.out)
    return EXIT_YES


def cmd_sat(args: argparse.Namespace) -> int:
    phi = parse_cnf(read_text(args.cnf))
    a = brute_sat(phi, SatMode(args.mode))
    if a is None:
        print("UNSAT")
        return EXIT_NO
    print("SAT")
    print("v " + " ".join(str(i + 1 if b else -(i + 1)) for i, b in enumerate(a)) + " 0")
    return EXIT_YES


COMMANDS = {"decide": cmd_decide, "verify": cmd_verify, "reduce": cmd_reduce, "gen": cmd_gen, "sat": cmd_sat}


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (OSError, DecompError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
