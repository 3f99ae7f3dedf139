"""Command line interface.

Exit codes: 0 success, 1 negative answer (verification failed, no labeling
exists), 2 usage error, 3 infeasible or invalid request, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serialize as ser
from .bounds import InvalidLength, bound_tables, split_target, structure_bounds
from .core import cs, verify_decomposition
from .extend import DEFAULT_BUDGET, BudgetExceeded, ExtendStats, Infeasible, extend, verify_extension
from .graceful import EXHAUSTED, FOUND, GracefulLabeling, ZillionShape, search_graceful
from .halving import ShapeMismatch, WitnessInvalid, decompose_solution, halve, redistribute, OneTwoDecomposition
from .pipeline import (
    DEFAULT_SEED,
    ExtendFailed,
    GracefulNotFound,
    InvalidRequest,
    SolveRequest,
    solve,
    verify_certificate,
)
from .pyramidal import ConstructionFailed, double

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 3
EXIT_BUDGET = 4


def _lengths(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _emit(obj, out: str | None) -> None:
    ser.write_json(obj, out)


def _figures(d, args, stem: str) -> None:
    if getattr(args, "format", "json") == "dot" and args.out and args.out != "-":
        for p in ser.write_dot_files(d, Path(args.out)):
            print(f"wrote {p}", file=sys.stderr)
    if getattr(args, "figure", None):
        from .plotting import plot_decomposition

        plot_decomposition(d, args.figure)
        print(f"wrote {args.figure}", file=sys.stderr)


def cmd_bounds(args) -> int:
    try:
        bd = structure_bounds(args.L)
    except InvalidLength as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out = {"L": list(bd.L), "b": bd.b, "b0": bd.b0, "b1": str(bd.b1), "B": bd.B, "y0": bd.y0}
    if args.y is not None:
        sp = split_target(args.y, bd.L)
        out["split"] = {"y": sp.y, "epsilon": sp.epsilon, "x": sp.x, "delta": sp.delta}
    _emit(out, None)
    return EXIT_OK


def cmd_tables(args) -> int:
    tables = bound_tables()
    sep = args.delimiter
    print(sep.join(("table", "y0", "l1", "l2")))
    for t, rows in enumerate(tables, start=1):
        for y0, l1, l2 in rows:
            print(sep.join(map(str, (t, y0, l1, l2))))
    if args.figure:
        from .plotting import plot_bound_tables

        plot_bound_tables(tables, args.figure)
        print(f"wrote {args.figure}", file=sys.stderr)
    return EXIT_OK


def cmd_graceful(args) -> int:
    res = search_graceful(ZillionShape(args.k, args.L), budget=args.budget, seed=args.seed)
    out = {"status": res.status, "nodes": res.nodes, "restarts": res.restarts}
    if res.status == FOUND:
        out["labeling"] = res.labeling.to_json()
    _emit(out, args.out)
    if res.status == FOUND:
        return EXIT_OK
    return EXIT_NEGATIVE if res.status == EXHAUSTED else EXIT_BUDGET


def cmd_double(args) -> int:
    obj = ser.read_json(args.from_graceful)
    t = GracefulLabeling.from_json(obj.get("labeling", obj))
    try:
        p = double(t, args.epsilon)
    except ConstructionFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(ser.pyramidal_to_json(p), args.out)
    _figures(p.orbit, args, "orbit")
    return EXIT_OK


def cmd_halve(args) -> int:
    obj = ser.read_json(args.inp)
    try:
        if "pyramidal" in obj:
            p = ser.pyramidal_from_json(obj)
            d = decompose_solution(p)
            if args.redistribute:
                w = ser.witness_from_json(ser.read_json(args.witness), p.modulus) if args.witness else p.witness
                d = redistribute(d, p.orbit, w)
            modulus = p.modulus
        else:
            if args.L is None:
                print("error: -L is required for a plain decomposition", file=sys.stderr)
                return EXIT_INVALID
            if args.redistribute:
                print("error: redistribution needs a pyramidal input with a witness", file=sys.stderr)
                return EXIT_INVALID
            base = ser.decomposition_from_json(obj)
            parts, prov = [], []
            for i, g in enumerate(base.factors):
                h, rest = halve(g, args.L)
                parts += [h, rest]
                prov += [{"factor": i, "role": "halving"}, {"factor": i, "role": "complement"}]
            eps = 1 if base.order % 2 else 2
            d = OneTwoDecomposition(base.order, eps, tuple(sorted(args.L)), parts, prov, base.one_factor)
            modulus = obj.get("modulus")
    except (ShapeMismatch, WitnessInvalid) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(ser.one_two_to_json(d, modulus), args.out)
    return EXIT_OK


def cmd_extend(args) -> int:
    d = ser.one_two_from_json(ser.read_json(args.inp))
    stats = ExtendStats()
    try:
        out = extend(d, seed=args.seed, budget=args.budget, stats=stats)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    rep = verify_extension(d, out)
    _emit(ser.decomposition_to_json(out), args.out)
    _figures(out, args, "extended")
    print(f"restarts={stats.restarts} placements={stats.placements} valid={rep.valid}", file=sys.stderr)
    return EXIT_OK if rep.valid else EXIT_NEGATIVE


def cmd_solve(args) -> int:
    req = SolveRequest(args.y, args.L, args.seed, args.budget, not args.strict)
    try:
        cert = solve(req)
    except InvalidRequest as exc:
        print(f"invalid request: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (GracefulNotFound, ExtendFailed) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(cert.to_json(), args.out)
    _figures(cert.solution, args, "solution")
    t = cert.timings
    print(
        f"OP({args.y}, {','.join(map(str, req.L))}) on {cert.order} vertices: "
        f"{len(cert.solution.factors)} factors, valid={cert.report.valid}, {t['total']:.2f}s",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    obj = ser.read_json(args.file)
    if "request" in obj:
        chk = verify_certificate(obj)
        for name, ok in chk.checks.items():
            print(f"{name}: {'ok' if ok else 'FAILED'}")
        print(f"certificate: {'valid' if chk.valid else 'INVALID'}")
        return EXIT_OK if chk.valid else EXIT_NEGATIVE
    d = ser.decomposition_from_json(obj)
    rep = verify_decomposition(d)
    print(json.dumps(ser.report_to_json(rep), indent=1))
    if args.structure is not None and rep.valid:
        structures = {cs(f) for f in d.factors}
        want = tuple(sorted(args.structure))
        if structures != {want}:
            print(f"cycle structures {sorted(structures)} differ from {list(want)}")
            return EXIT_NEGATIVE
    return EXIT_OK if rep.valid else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oberwolfach", description="Explicit Oberwolfach solutions for two-table shapes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="bound quantities for a list of cycle lengths")
    p.add_argument("-L", type=_lengths, required=True)
    p.add_argument("-y", type=int, default=None, help="also print the split of this target")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("tables", help="print both bound tables as delimited rows")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--figure", default=None, help="write a bar chart of the tables")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("graceful", help="search a graceful labeling of [k | L]")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-L", type=_lengths, required=True)
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_graceful)

    p = sub.add_parser("double", help="build the pyramidal orbit from a graceful labeling")
    p.add_argument("--from-graceful", required=True)
    p.add_argument("--epsilon", type=int, choices=(1, 2), default=1)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_double)

    p = sub.add_parser("halve", help="split every factor into two (1,2)-parts")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("-L", type=_lengths, default=None)
    p.add_argument("--witness", default=None)
    p.add_argument("--redistribute", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_halve)

    p = sub.add_parser("extend", help="extend a (1,2)-decomposition to a 2-factorization")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("solve", help="solve OP(y, L) end to end")
    p.add_argument("-y", type=int, required=True)
    p.add_argument("-L", type=_lengths, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--strict", action="store_true", help="refuse targets below y0")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="verify a certificate or a decomposition")
    p.add_argument("file")
    p.add_argument("--structure", type=_lengths, default=None, help="expected cycle structure of every factor, e.g. 24,3")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
