"""Command-line entry point: ``maxcut1p solve|gen|bench``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import bench
from .errors import MaxCutError, NegativeWeight, Unsatisfiable
from .fileformat import read_instance, serialize
from .oracle import MAX_ORACLE_NODES, GeneratorConfig, agrees_with_oracle, generate_instance
from .reduction import max_cut_general, max_cut_nonneg

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MISMATCH = 3
EXIT_NEGATIVE = 4

GEN_RETRIES = 20


def _pair(text: str) -> tuple[int, int]:
    try:
        u, v = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected u,v but got {text!r}") from None
    return u, v


def _cmd_solve(args: argparse.Namespace) -> int:
    try:
        instance = read_instance(args.file)
    except (MaxCutError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    graph = instance.graph
    forced = [(u - 1, v - 1) for u, v in args.force]
    mode = args.mode
    if mode == "auto":
        nonneg = all(e.weight >= 0 for e in graph.edges)
        mode = "nonneg" if nonneg and not forced else "general"
    if mode == "nonneg" and forced:
        print("error: --force requires general mode", file=sys.stderr)
        return EXIT_INPUT
    try:
        if mode == "nonneg":
            cut, stats = max_cut_nonneg(instance, threads=args.threads)
        else:
            cut, stats = max_cut_general(instance, forced, threads=args.threads)
    except NegativeWeight as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except MaxCutError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    # the solvers already leave node 1 out of the reported side
    print(f"value {cut.value}")
    print(" ".join(["side", *(str(x + 1) for x in sorted(cut.side))]))
    if args.stats:
        print(f"stats leaves={stats.leaf_count} depth={stats.max_depth}")
    if args.check:
        if len(graph) > MAX_ORACLE_NODES:
            print(f"check skipped: oracle is limited to {MAX_ORACLE_NODES} nodes", file=sys.stderr)
        elif not agrees_with_oracle(graph, cut, forced):
            print("check failed: result differs from exhaustive search", file=sys.stderr)
            return EXIT_MISMATCH
        else:
            print("check ok")
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    for attempt in range(GEN_RETRIES):
        try:
            config = GeneratorConfig(
                args.nodes, args.crossings, args.wmin, args.wmax, args.seed + attempt, args.drop
            )
            instance = generate_instance(config)
        except Unsatisfiable:
            continue
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        sys.stdout.write(serialize(instance, [f"seed {config.seed}"]))
        return EXIT_OK
    print(f"error: no instance after {GEN_RETRIES} seeds", file=sys.stderr)
    return EXIT_INPUT


def _cmd_bench(args: argparse.Namespace) -> int:
    modes = ("nonneg", "general") if args.mode == "both" else (args.mode,)
    try:
        rows = bench.sweep(args.nodes, args.crossings, args.reps, args.seed, modes, args.wmin, args.wmax)
    except Unsatisfiable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            bench.write_csv(rows, fh)
    else:
        bench.write_csv(rows, sys.stdout)
    for (n, mode, k), ratio in bench.growth_ratios(rows).items():
        print(f"n={n} mode={mode} k={k - 1}->{k}: median time x{ratio:.2f}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxcut1p", description="Exact Max-Cut on 1-planar graphs with a known crossing set.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("file")
    p.add_argument("--mode", choices=("nonneg", "general", "auto"), default="auto")
    p.add_argument("--force", type=_pair, nargs="+", action="extend", default=[], metavar="U,V",
                   help="1-based node pair that must end up on opposite sides (must be an edge)")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--check", action="store_true", help="compare with exhaustive search")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_solve)

    g = sub.add_parser("gen", help="write a random instance to stdout")
    g.add_argument("--nodes", type=int, required=True)
    g.add_argument("--crossings", type=int, default=0)
    g.add_argument("--wmin", type=int, default=1)
    g.add_argument("--wmax", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--drop", type=float, default=0.0, help="fraction of non-crossing edges to remove")
    g.set_defaults(func=_cmd_gen)

    b = sub.add_parser("bench", help="leaf-count and timing sweep as CSV")
    b.add_argument("--nodes", type=int, nargs="+", required=True)
    b.add_argument("--crossings", type=int, nargs="+", required=True)
    b.add_argument("--reps", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--mode", choices=("nonneg", "general", "both"), default="general")
    b.add_argument("--wmin", type=int, default=0)
    b.add_argument("--wmax", type=int, default=10)
    b.add_argument("--out")
    b.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
