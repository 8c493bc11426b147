"""Command line: gen, solve, oracle, sweep, verify-bounds.

Exit codes: 0 success, 2 bad input (flags, files, divisibility), 3 an
exhaustive search would exceed its size guard. verify-bounds exits 1 when
a lattice check fails.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from fractions import Fraction

from balfactor.bounds import constants, verify_lattice_facts
from balfactor.errors import InputError, TooLargeError
from balfactor.graph_model import (
    PatternGraph,
    balance_alpha,
    factor_counts,
    load_colouring,
    load_pattern,
    random_balanced_colouring,
    save_colouring,
)
from balfactor.harness import SWEEP_COLUMNS, public_report, report_header, solve_instance, sweep_rows
from balfactor.oracle import min_deviation_bruteforce, witness_factor
from balfactor.palette import make_simplex_palette

EXIT_INPUT = 2
EXIT_GUARD = 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flags(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _pattern(args: argparse.Namespace) -> PatternGraph:
    if args.h_complete is not None:
        return PatternGraph.complete(args.h_complete)
    return load_pattern(_read(args.h))


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def cmd_gen(args) -> int:
    g = random_balanced_colouring(args.n, make_simplex_palette(args.k), args.seed)
    alpha = balance_alpha(g)
    _emit(save_colouring(g), args.out)
    print(f"alpha {alpha!r}", file=sys.stdout if args.out else sys.stderr)
    return 0


def cmd_solve(args) -> int:
    g = load_colouring(_read(args.input))
    h = _pattern(args)
    rep = solve_instance(
        g,
        h,
        strategy=args.strategy,
        seed=args.seed,
        restarts=args.restarts,
        max_iters=args.max_iters,
        init=args.init,
    )
    out = report_header(_flags(args))
    out["instance"] = {"n_v": g.n_v, "k": g.k, "r": h.r, "h_edges": sorted(h.edges), "seed": args.seed, "input": args.input}
    out.update(public_report(rep))
    if args.emit_factor:
        out["factor"] = [list(p) for p in rep["_factor"].parts]
        out["h_factor_edges"] = [list(e) for e in rep["_embedding"].edges()]
    _emit(_json(out), args.out)
    return 0


def cmd_oracle(args) -> int:
    g = load_colouring(_read(args.input))
    h = _pattern(args)
    dev, emb = min_deviation_bruteforce(g, h, limit=args.limit)
    out = report_header(_flags(args))
    out.update(
        {
            "instance": {"n_v": g.n_v, "k": g.k, "r": h.r, "h_edges": sorted(h.edges)},
            "min_deviation": str(dev),
            "witness": {
                "parts": [list(p) for p in witness_factor(emb).parts],
                "h_factor_edges": [list(e) for e in emb.edges()],
                "counts": list(factor_counts(g, emb.edges())),
            },
        }
    )
    _emit(_json(out), args.out)
    return 0


def cmd_sweep(args) -> int:
    n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
    if not n_list or any(n < 1 for n in n_list):
        raise InputError(f"--n-list needs positive integers, got {args.n_list!r}")
    h = _pattern(args) if (args.h or args.h_complete) else PatternGraph.complete(args.r)
    if h.r != args.r:
        raise InputError(f"pattern has {h.r} vertices but --r is {args.r}")
    rows = sweep_rows(n_list, args.k, h, args.trials, args.seed, args.strategy, args.restarts)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_verify_bounds(args) -> int:
    facts = verify_lattice_facts(args.d, args.r)
    table = constants(args.d + 1, args.r)
    out = report_header(_flags(args))
    out["lattice"] = {
        "d": facts.d,
        "r": facts.r,
        "min_norm_sq": str(facts.min_norm_sq),
        "expected_min_norm_sq": str(2 + Fraction(2, args.d)),
        "max_norm": facts.max_norm,
        "max_norm_bound": 4 * args.r,
        "pass": facts.passed,
    }
    out["table"] = dataclasses.asdict(table)
    _emit(_json(out), args.out)
    return 0 if facts.passed else 1


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _at_least_two(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"expected an integer >= 2, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="balfactor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a (near-)balanced random colouring of K_n")
    p.add_argument("--n", type=_at_least_two, required=True, help="number of vertices")
    p.add_argument("--k", type=_at_least_two, required=True, help="number of colours")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    def pattern_flags(p, required=True):
        grp = p.add_mutually_exclusive_group(required=required)
        grp.add_argument("--h", help="pattern graph file")
        grp.add_argument("--h-complete", type=_at_least_two, metavar="R", help="use H = K_R")

    p = sub.add_parser("solve", help="local search + H-embedding on a colouring file")
    p.add_argument("--input", required=True)
    pattern_flags(p)
    p.add_argument("--strategy", choices=["best", "first"], default="best")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=_positive, default=1)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--init", choices=["random", "blocks"], default="random")
    p.add_argument("--emit-factor", action="store_true", help="include the factors in the report")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact minimum deviation by exhaustive search")
    p.add_argument("--input", required=True)
    pattern_flags(p)
    p.add_argument("--limit", type=int, default=10**7, help="enumeration guard")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="CSV of solver results over random instances")
    p.add_argument("--n-list", required=True, help="comma-separated part counts n (host K_{n r})")
    p.add_argument("--k", type=_at_least_two, required=True)
    p.add_argument("--r", type=_at_least_two, required=True)
    p.add_argument("--trials", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    pattern_flags(p, required=False)
    p.add_argument("--strategy", choices=["best", "first"], default="best")
    p.add_argument("--restarts", type=_positive, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-bounds", help="check the swap-lattice facts and print the constants")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--r", type=_at_least_two, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_bounds)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
