"""Command-line front tracing and benchmark reproduction.

Example:

    paretopath --problem paper-toy --d 0.01 --method both --out-dir out

writes front_pathfollow_d0.01.csv, front_naive_d0.01.csv, report.json, and
SVG figures into out/.  Exit status is 0 when every traced point converged,
2 when any point was flagged non-converged, and 1 for usage errors.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bench import front_report_row, _environment_note
from .grid import build_grid
from .pathfollow import naive_front, trace_front, trace_front_parallel
from .plots import save_counters_figure, save_front_figure
from .problems import resolve_problem
from .solvers import SolveConfig

OUT_DIR_ENV = "PARETOPATH_OUT_DIR"
FORMATS = ("csv", "json", "svg")
METHOD_CHOICES = ("pathfollow", "naive", "both", "parallel")


@dataclass
class RunConfig:
    """One CLI invocation, fully determining its outputs."""

    problem: str = "paper-toy"
    d_values: tuple = (0.1,)
    epsilon: float = 1e-7
    method: str = "both"
    workers: int = 2
    seed: int | None = None
    out_dir: Path = Path("out")
    formats: tuple = ("csv", "json", "svg")
    random_x0: bool = False

    def as_dict(self) -> dict:
        return {
            "problem": self.problem,
            "d": list(self.d_values),
            "epsilon": self.epsilon,
            "method": self.method,
            "workers": self.workers,
            "seed": self.seed,
            "out_dir": str(self.out_dir),
            "formats": list(self.formats),
            "random_x0": self.random_x0,
        }


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default; 2 is reserved for non-convergence here
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="paretopath",
        description="Trace the Pareto front of a strongly convex multi-objective problem "
        "over a weight grid, by Newton continuation and/or the naive per-weight baseline.",
    )
    parser.add_argument(
        "--problem",
        default="paper-toy",
        help="built-in problem name (paper-toy, random-quadratic, quadratic-logistic) "
        "or path to a problem spec JSON with keys kind, n, m, c, L, seed",
    )
    parser.add_argument(
        "--d",
        action="append",
        type=float,
        metavar="D",
        help="grid spacing in (0,1); repeat the flag for a spacing sweep (default 0.1)",
    )
    parser.add_argument("--epsilon", type=float, default=1e-7, help="stationarity tolerance (default 1e-7)")
    parser.add_argument(
        "--method",
        choices=METHOD_CHOICES,
        default="both",
        help="pathfollow, naive, both, or parallel (default both)",
    )
    parser.add_argument("--workers", type=int, default=2, help="segment count for --method parallel (default 2)")
    parser.add_argument("--seed", type=int, default=None, help="seed for generated problems and --random-x0")
    parser.add_argument(
        "--out-dir",
        default=None,
        help=f"output directory (default: ${OUT_DIR_ENV} or ./out)",
    )
    parser.add_argument(
        "--formats",
        default="csv,json,svg",
        help="comma-separated subset of csv,json,svg (default all three)",
    )
    parser.add_argument(
        "--random-x0",
        action="store_true",
        help="start solves from a seeded standard-normal point instead of the origin",
    )
    return parser


def parse_config(argv) -> RunConfig:
    """Parse and validate argv into a RunConfig; raises _UsageError on bad input."""
    args = build_parser().parse_args(argv)
    d_values = tuple(args.d) if args.d else (0.1,)
    for d in d_values:
        if not (0.0 < d < 1.0):
            raise _UsageError("d must be in (0,1)")
    if not args.epsilon > 0.0:
        raise _UsageError("epsilon must be positive")
    if args.workers < 1:
        raise _UsageError("workers must be >= 1")
    formats = tuple(f for f in args.formats.split(",") if f)
    for f in formats:
        if f not in FORMATS:
            raise _UsageError(f"unknown format {f!r}, expected subset of {','.join(FORMATS)}")
    out_dir = args.out_dir or os.environ.get(OUT_DIR_ENV) or "out"
    return RunConfig(
        problem=args.problem,
        d_values=d_values,
        epsilon=args.epsilon,
        method=args.method,
        workers=args.workers,
        seed=args.seed,
        out_dir=Path(out_dir),
        formats=formats,
        random_x0=args.random_x0,
    )


def _d_tag(d: float) -> str:
    return f"{d:g}"


def run(config: RunConfig) -> int:
    """Execute one configured run and write its outputs; returns the exit status."""
    try:
        bundle = resolve_problem(config.problem, seed=config.seed)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    try:
        config.out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise _UsageError(f"cannot create output directory {config.out_dir}: {exc}") from exc

    if config.random_x0:
        x0 = np.random.default_rng(config.seed or 0).standard_normal(bundle.n)
    else:
        x0 = np.zeros(bundle.n)
    cfg = SolveConfig(epsilon=config.epsilon)
    method_names = ("pathfollow", "naive") if config.method == "both" else (config.method,)
    runner = {
        "pathfollow": lambda grid: trace_front(bundle, grid, cfg, x0),
        "naive": lambda grid: naive_front(bundle, grid, cfg, x0),
        "parallel": lambda grid: trace_front_parallel(bundle, grid, config.workers, cfg, x0),
    }

    rows = []
    any_flagged = False
    for d in config.d_values:
        try:
            grid = build_grid(bundle.m, d)
        except ValueError as exc:
            raise _UsageError(str(exc)) from exc
        tag = _d_tag(d)
        d_fronts = {}
        for name in method_names:
            start = time.perf_counter()
            front = runner[name](grid)
            wall = time.perf_counter() - start
            d_fronts[name] = front
            any_flagged = any_flagged or not front.all_converged
            row = front_report_row(bundle, front)
            row["wall_time"] = wall
            rows.append(row)
            if "csv" in config.formats:
                front.to_csv(config.out_dir / f"front_{name}_d{tag}.csv")
            if "json" in config.formats:
                front.to_json(config.out_dir / f"front_{name}_d{tag}.json")
        naive_row = next((r for r in rows if r["d"] == d and r["method"] == "naive"), None)
        if naive_row is not None:
            for r in rows:
                if r["d"] == d and r["method"] in ("pathfollow", "parallel"):
                    r["speedup_cost"] = naive_row["gradient_equivalent_cost"] / r["gradient_equivalent_cost"]
                    r["speedup_wall"] = naive_row["wall_time"] / r["wall_time"]
        if "svg" in config.formats:
            if bundle.m == 2:
                save_front_figure(
                    d_fronts,
                    config.out_dir / f"front_d{tag}.svg",
                    title=f"{bundle.name}, d={tag}",
                )
            save_counters_figure(
                [r for r in rows if r["d"] == d],
                config.out_dir / f"counters_d{tag}.svg",
                title=f"{bundle.name}, d={tag}",
            )

    report = {
        "config": config.as_dict(),
        "problem": bundle.name,
        "epsilon": config.epsilon,
        "environment": _environment_note(),
        "rows": rows,
    }
    (config.out_dir / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 2 if any_flagged else 0


def main(argv=None) -> int:
    """CLI entry point; returns the exit status instead of raising SystemExit."""
    try:
        config = parse_config(argv)
        return run(config)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


def console_main() -> None:
    sys.exit(main())
