"""Cost accounting, front comparison, derivative validation, and benchmark runs.

The benchmark prices work in gradient-equivalents: one scalarized gradient
costs 1 and one Hessian assembly (always paired with one linear solve) costs
n.  Wall times are recorded for the report but never drive any assertion;
counters are the currency of every claimed speedup.
"""

import json
import platform
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .counters import CostCounters
from .grid import WeightGrid, build_grid
from .pathfollow import ParetoFront, naive_front, trace_front, trace_front_parallel
from .problems import ObjectiveBundle, convexity_bounds, objective_vector
from .solvers import SolveConfig, solve_to_stationarity

__all__ = [
    "BenchReport",
    "CostCounters",
    "compare_fronts",
    "fd_validate",
    "front_report_row",
    "gradient_equivalent_cost",
    "run_benchmark",
]


def gradient_equivalent_cost(counters: CostCounters, n: int) -> int:
    """Scalar cost with one Hessian-assembly-plus-solve priced at n gradients."""
    return counters.grad_evals + n * counters.hess_evals


def compare_fronts(a: ParetoFront, b: ParetoFront) -> float:
    """Largest per-weight solution distance between two fronts on the same grid."""
    la, lb = a.lambdas(), b.lambdas()
    if la.shape != lb.shape or not np.array_equal(la, lb):
        raise ValueError("fronts were computed on different grids")
    return float(np.linalg.norm(a.solutions() - b.solutions(), axis=1).max())


@dataclass
class BenchReport:
    """Benchmark outcome: one row per (spacing, method) with counters and accuracy."""

    problem: str
    epsilon: float
    rows: list[dict]
    environment: str
    fronts: dict = field(default_factory=dict, repr=False)  # (d, method) -> ParetoFront

    def as_dict(self) -> dict:
        return {
            "problem": self.problem,
            "epsilon": self.epsilon,
            "environment": self.environment,
            "rows": self.rows,
        }

    def to_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n")

    def to_csv(self, path: str | Path) -> None:
        import csv

        keys: list[str] = []
        for row in self.rows:
            for k in row:
                if k not in keys:
                    keys.append(k)
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=keys)
            writer.writeheader()
            for row in self.rows:
                flat = {k: (json.dumps(v) if isinstance(v, dict) else v) for k, v in row.items()}
                writer.writerow(flat)


def _environment_note() -> str:
    return f"python {sys.version.split()[0]}, numpy {np.__version__}, {platform.platform()}"


def front_report_row(bundle: ObjectiveBundle, front: ParetoFront, oracle_epsilon: float = 1e-12) -> dict:
    """Accuracy and cost summary of one front against the high-accuracy oracle.

    Every front weight is re-solved by safeguarded Newton to oracle_epsilon,
    seeded from the front's own solution; the unique stationary point makes
    the seed choice immaterial.  The oracle's own residuals are recorded so
    ground truth can be audited.
    """
    deviations, oracle_residuals = [], []
    for p in front.points:
        x_star, trace = solve_to_stationarity(bundle, p.lam, x0=p.x, epsilon=oracle_epsilon)
        deviations.append(float(np.linalg.norm(p.x - x_star)))
        oracle_residuals.append(trace.residual)
    return {
        "d": front.d,
        "method": front.method,
        "points": len(front),
        "converged": front.all_converged,
        "initial_solves": front.initial_solves,
        "counters": front.total_counters.as_dict(),
        "gradient_equivalent_cost": gradient_equivalent_cost(front.total_counters, bundle.n),
        "max_deviation": max(deviations),
        "max_oracle_residual": max(oracle_residuals),
    }


def run_benchmark(
    bundle: ObjectiveBundle,
    d_list,
    methods=("pathfollow", "naive"),
    cfg: SolveConfig | None = None,
    workers: int = 2,
    keep_fronts: bool = False,
) -> BenchReport:
    """Run the requested methods over a list of grid spacings and summarize.

    For every spacing with both a pathfollow-family and the naive method, the
    pathfollow rows gain speedup entries: naive cost divided by that method's
    cost, both in gradient-equivalents and in wall seconds.  Solver errors are
    caught per run and flagged in the affected row.
    """
    cfg = cfg or SolveConfig()
    rows: list[dict] = []
    fronts: dict = {}
    runner = {
        "pathfollow": lambda grid: trace_front(bundle, grid, cfg),
        "naive": lambda grid: naive_front(bundle, grid, cfg),
        "parallel": lambda grid: trace_front_parallel(bundle, grid, workers, cfg),
    }
    for name in methods:
        if name not in runner:
            raise ValueError(f"unknown method {name!r}, expected subset of {sorted(runner)}")
    for d in d_list:
        grid = build_grid(bundle.m, d)
        d_rows: dict[str, dict] = {}
        for name in methods:
            start = time.perf_counter()
            try:
                front = runner[name](grid)
            except Exception as exc:  # solver errors flag the row, run continues
                rows.append({"d": d, "method": name, "error": str(exc)})
                continue
            wall = time.perf_counter() - start
            row = front_report_row(bundle, front)
            row["wall_time"] = wall
            d_rows[name] = row
            rows.append(row)
            if keep_fronts:
                fronts[(d, name)] = front
        naive_row = d_rows.get("naive")
        if naive_row:
            for name in ("pathfollow", "parallel"):
                row = d_rows.get(name)
                if row:
                    row["speedup_cost"] = naive_row["gradient_equivalent_cost"] / row["gradient_equivalent_cost"]
                    row["speedup_wall"] = naive_row["wall_time"] / row["wall_time"]
    return BenchReport(
        problem=bundle.name,
        epsilon=cfg.epsilon,
        rows=rows,
        environment=_environment_note(),
        fronts=fronts,
    )


def _central_grad(f, x: np.ndarray, h: float) -> np.ndarray:
    out = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        out[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return out


def _central_jacobian(g, x: np.ndarray, h: float) -> np.ndarray:
    cols = []
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        cols.append((np.asarray(g(x + e)) - np.asarray(g(x - e))) / (2.0 * h))
    return np.stack(cols, axis=1)


def fd_validate(bundle: ObjectiveBundle, trial_points: int = 20, seed: int = 0) -> dict:
    """Finite-difference audit of a bundle's declared derivatives and bounds.

    Central differences check every objective's gradient (relative error
    <= 1e-6) and Hessian (<= 1e-5) at seeded points, and sampled Rayleigh
    quotients of the Hessians must fall inside the declared [c, L] envelope.
    Returns a report dict with a "passed" verdict per check.
    """
    rng = np.random.default_rng(seed)
    bounds = convexity_bounds(bundle)
    grad_err = hess_err = 0.0
    ray_lo, ray_hi = np.inf, -np.inf
    for _ in range(trial_points):
        x = rng.standard_normal(bundle.n)
        h = 1e-6 * (1.0 + float(np.linalg.norm(x)))
        for f, g, hs in zip(bundle.values, bundle.grads, bundle.hessians):
            g_exact = np.asarray(g(x), dtype=float)
            g_fd = _central_grad(f, x, h)
            grad_err = max(grad_err, np.linalg.norm(g_fd - g_exact) / (1.0 + np.linalg.norm(g_exact)))
            h_exact = np.asarray(hs(x), dtype=float)
            h_fd = _central_jacobian(g, x, h)
            h_fd = 0.5 * (h_fd + h_fd.T)
            hess_err = max(hess_err, np.abs(h_fd - h_exact).max() / (1.0 + np.abs(h_exact).max()))
            v = rng.standard_normal(bundle.n)
            ray = float(v @ h_exact @ v / (v @ v))
            ray_lo, ray_hi = min(ray_lo, ray), max(ray_hi, ray)
    report = {
        "gradient": {"max_rel_error": grad_err, "passed": grad_err <= 1e-6},
        "hessian": {"max_rel_error": hess_err, "passed": hess_err <= 1e-5},
        "rayleigh": {
            "min": ray_lo,
            "max": ray_hi,
            "declared_c": bounds.c,
            "declared_L": bounds.L,
            "passed": (ray_lo >= bounds.c - 1e-9) and (ray_hi <= bounds.L + 1e-9),
        },
    }
    report["passed"] = all(section["passed"] for section in report.values() if isinstance(section, dict))
    return report
