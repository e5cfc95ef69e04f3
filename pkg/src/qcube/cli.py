"""Command-line interface: ``qcube run|sample|verify|group|parse``.

Exit codes: 0 ok, 1 lex/parse error, 2 I/O error, 3 verification failures.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .circuit import LexError, ParseError, eval_exact, format_circuit, parse, sample_json
from .equivalence import run_full_suite
from .rotations import cube_group, order

EXIT_OK, EXIT_SYNTAX, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _default_seed() -> int:
    return int(os.environ.get("QCUBE_SEED", "0"))


def cmd_run(args) -> int:
    c = _load(args.file)
    branches = eval_exact(c)
    if args.json:
        print(_dump({"mode": c.mode, "branches": [b.to_json() for b in branches]}))
        return EXIT_OK
    width = max([len(b.key) for b in branches] + [8])
    print(f"{'outcomes':<{width}}  {'prob':>8}  final_bloch")
    for b in branches:
        bloch = "(" + ", ".join(str(x) for x in b.final_state.bloch) + ")"
        print(f"{b.key or '-':<{width}}  {str(b.probability):>8}  {bloch}")
    return EXIT_OK


def cmd_sample(args) -> int:
    c = _load(args.file)
    seed = _default_seed() if args.seed is None else args.seed
    out = sample_json(c, args.shots, seed, workers=args.workers)
    if args.json:
        print(_dump(out))
        return EXIT_OK
    print(f"shots={out['shots']} seed={out['seed']}")
    width = max([len(k) for k in out["counts"]] + [8])
    for key, n in out["counts"].items():
        print(f"{key or '-':<{width}}  {n:>10}  {n / args.shots:.5f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    report = run_full_suite(n_random=args.random, seed=seed)
    if args.json:
        print(_dump(report.to_json()))
    else:
        print(report.summary())
        if report.first_counterexample:
            print("first counterexample:", json.dumps(report.first_counterexample.to_json()))
    return EXIT_OK if report.ok else EXIT_VERIFY


def _group_json(g) -> dict:
    return {
        "elements": [
            {"index": k, "name": r.name, "cycles": r.cycles, "order": order(r),
             "matrix": [list(row) for row in r.matrix]}
            for k, r in enumerate(g)
        ],
        "classes": [
            {"size": len(cls), "members": [r.name for r in cls]} for cls in g.conjugacy_classes()
        ],
        "cayley": [list(row) for row in g.cayley],
    }


def cmd_group(args) -> int:
    g = cube_group()
    if args.json:
        print(_dump(_group_json(g)))
        return EXIT_OK
    if args.classes:
        for cls in g.conjugacy_classes():
            print(f"{len(cls):>2}  order {order(cls[0])}  " + " ".join(r.name for r in cls))
        return EXIT_OK
    if args.table:
        names = [r.name for r in g]
        w = max(len(n) for n in names)
        print(" " * w + " | " + " ".join(f"{n:>{w}}" for n in names))
        for k, row in enumerate(g.cayley):
            print(f"{names[k]:>{w}} | " + " ".join(f"{names[j]:>{w}}" for j in row))
        return EXIT_OK
    for k, r in enumerate(g):
        print(f"{k:>2}  {r.name:<7} {r.cycles:<18} order {order(r)}  {r.matrix}")
    return EXIT_OK


def cmd_parse(args) -> int:
    sys.stdout.write(format_circuit(_load(args.file)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcube", description="Quantum cube toy model simulator.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="exact branch-tree evaluation of a .cq circuit")
    r.add_argument("file")
    fmt = r.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--table", action="store_true", help="aligned text table (default)")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("sample", help="seeded ontic Monte Carlo of a .cq circuit")
    s.add_argument("file")
    s.add_argument("--shots", type=int, required=True)
    s.add_argument("--seed", type=int, default=None, help="defaults to $QCUBE_SEED, else 0")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sample)

    v = sub.add_parser("verify", help="run the cube/qubit equivalence suite")
    v.add_argument("--random", type=int, default=200, help="number of random octahedron states")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("group", help="list the 24 rotations")
    gm = g.add_mutually_exclusive_group()
    gm.add_argument("--classes", action="store_true")
    gm.add_argument("--table", action="store_true", help="Cayley table")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_group)

    q = sub.add_parser("parse", help="parse and pretty-print a .cq circuit")
    q.add_argument("file")
    q.set_defaults(func=cmd_parse)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LexError, ParseError) as e:
        print(f"{getattr(args, 'file', '<input>')}:{e}", file=sys.stderr)
        return EXIT_SYNTAX
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
