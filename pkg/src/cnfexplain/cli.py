"""Command-line runner.

Subcommands: ``explain`` one instance, ``bench`` a directory of instances
against a configuration grid, ``encode-sudoku`` a grid file into the
instance format.  Exit codes: 0 success, 2 timeout with a partial sequence,
3 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ContradictionError, ParseError
from .instances import load_instance, save_instance
from .runner import RunConfig, report_suite, run, write_run
from .sudoku import encode_sudoku, load_grid

EXIT_OK = 0
EXIT_PARTIAL = 2
EXIT_INPUT = 3

STRATEGIES = ["mus", "ocus", "ocus-bound", "ocus-split"]
GROWS = [
    "sat", "subsetmax", "maxsat-domain", "maxsat-full",
    "multi-sat", "multi-maxsat", "multi-subsetmax", "none",
]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ContradictionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnfexplain",
        description="Cost-optimal step-wise explanations for satisfiable CNF problems",
    )
    sub = parser.add_subparsers(required=True)

    p_explain = sub.add_parser("explain", help="explain one instance")
    p_explain.add_argument("--instance", required=True)
    p_explain.add_argument("--strategy", choices=STRATEGIES, default="ocus")
    p_explain.add_argument("--grow", choices=GROWS, default="sat")
    p_explain.add_argument("--incremental", action="store_true")
    p_explain.add_argument("--seed", type=int, default=None)
    p_explain.add_argument("--time-limit", type=float, default=60.0)
    p_explain.add_argument("--out", required=True)
    p_explain.set_defaults(func=cmd_explain)

    p_bench = sub.add_parser("bench", help="run a configuration grid over an instance directory")
    p_bench.add_argument("--instances", required=True)
    p_bench.add_argument("--grid", required=True,
                         help="comma-separated configs, e.g. 'ocus/sat/incr,mus/none'")
    p_bench.add_argument("--time-limit", type=float, default=60.0)
    p_bench.add_argument("--out", required=True)
    p_bench.set_defaults(func=cmd_bench)

    p_sudoku = sub.add_parser("encode-sudoku", help="encode a sudoku grid file as an instance")
    p_sudoku.add_argument("--grid", required=True)
    p_sudoku.add_argument("--out", required=True)
    p_sudoku.set_defaults(func=cmd_encode_sudoku)

    return parser


def cmd_explain(args) -> int:
    instance = load_instance(args.instance)
    config = RunConfig(
        strategy=_strategy(args.strategy),
        grow=_grow(args.grow),
        incremental=args.incremental,
        seed=args.seed,
        time_limit=args.time_limit,
    )
    report, sequence = run(instance, config)
    write_run(args.out, report, sequence)
    status = "complete" if sequence.complete else "partial"
    print(f"{instance.name}: {len(sequence.steps)} steps, costs {sequence.costs()}, {status}")
    return EXIT_OK if sequence.complete else EXIT_PARTIAL


def cmd_bench(args) -> int:
    configs = [RunConfig.parse(c) for c in args.grid.split(",") if c.strip()]
    if not configs:
        raise ValueError("empty configuration grid")
    configs = [
        RunConfig(c.strategy, c.grow, c.incremental, c.seed, args.time_limit) for c in configs
    ]
    paths = sorted(Path(args.instances).glob("*.inst"))
    if not paths:
        raise ValueError(f"no *.inst files in {args.instances}")
    any_partial = False
    for path in paths:
        instance = load_instance(path)
        for config in configs:
            report, sequence = run(instance, config)
            write_run(args.out, report, sequence)
            any_partial |= not sequence.complete
            status = "ok" if sequence.complete else "partial"
            print(f"{instance.name} [{config.label()}]: {len(sequence.steps)} steps "
                  f"in {report.total_wall:.2f}s ({status})")
    tables = report_suite(args.out)
    for name, path in sorted(tables.items()):
        print(f"{name}: {path}")
    return EXIT_PARTIAL if any_partial else EXIT_OK


def cmd_encode_sudoku(args) -> int:
    grid = load_grid(args.grid)
    instance = encode_sudoku(grid)
    save_instance(instance, args.out)
    print(f"{instance.name}: {len(instance.clauses)} clauses, {len(instance.initial)} givens")
    return EXIT_OK


def _strategy(name: str):
    from .sequence import OneStepStrategy

    return OneStepStrategy(name)


def _grow(name: str):
    from .growing import GrowStrategy

    return GrowStrategy.named(name)


if __name__ == "__main__":
    raise SystemExit(main())
