"""Front tracing: predictor-corrector continuation, the naive baseline, and
a segment-parallel variant.

trace_front solves the first grid weight by gradient descent and then walks
the path, predicting each next solution from the current one and correcting
with Newton.  naive_front ignores the path structure and runs a full gradient
descent at every weight from the same starting point.  Both return a
ParetoFront whose counters make the cost difference measurable.
"""

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .counters import CostCounters
from .grid import WeightGrid
from .problems import ConvexityBounds, ObjectiveBundle, objective_vector
from .solvers import (
    PREDICTOR_COST,
    NonConvergenceError,
    SolveConfig,
    SolveTrace,
    predictor,
    newton_corrector,
    gradient_descent,
    solve_to_stationarity,
)

METHODS = ("pathfollow", "naive", "parallel")


@dataclass
class FrontPoint:
    """One traced front entry: weight vector, solution, and its solve record.

    For continuation points the trace counters include the predictor's fixed
    cost, so summing per-point counters accounts for all work after the
    initial solve.
    """

    lam: np.ndarray
    x: np.ndarray
    residual: float
    objective_values: np.ndarray
    trace: SolveTrace

    @property
    def converged(self) -> bool:
        return self.trace.converged


@dataclass
class ParetoFront:
    """A traced front in grid path order with aggregate cost counters."""

    points: list[FrontPoint]
    method: str
    total_counters: CostCounters
    epsilon: float
    d: float
    initial_solves: int = 1
    note: str = ""

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def all_converged(self) -> bool:
        return all(p.converged for p in self.points)

    def lambdas(self) -> np.ndarray:
        return np.stack([p.lam for p in self.points])

    def solutions(self) -> np.ndarray:
        return np.stack([p.x for p in self.points])

    def objectives(self) -> np.ndarray:
        return np.stack([p.objective_values for p in self.points])

    def residuals(self) -> np.ndarray:
        return np.array([p.residual for p in self.points])

    def to_csv(self, path: str | Path) -> None:
        """Front in path order: weights, solution, objective values, residual,
        corrector iterations."""
        m = self.points[0].lam.shape[0]
        n = self.points[0].x.shape[0]
        header = (
            [f"lambda_{i + 1}" for i in range(m)]
            + [f"x_{i + 1}" for i in range(n)]
            + [f"f_{i + 1}" for i in range(m)]
            + ["residual", "corrector_iters"]
        )
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for p in self.points:
                row = (
                    [repr(float(v)) for v in p.lam]
                    + [repr(float(v)) for v in p.x]
                    + [repr(float(v)) for v in p.objective_values]
                    + [repr(float(p.residual)), str(p.trace.counters.newton_iters)]
                )
                writer.writerow(row)

    def as_dict(self) -> dict:
        """JSON-ready representation including full solve traces."""
        return {
            "method": self.method,
            "epsilon": self.epsilon,
            "d": self.d,
            "initial_solves": self.initial_solves,
            "note": self.note,
            "total_counters": self.total_counters.as_dict(),
            "points": [
                {
                    "lambda": [float(v) for v in p.lam],
                    "x": [float(v) for v in p.x],
                    "f": [float(v) for v in p.objective_values],
                    "residual": float(p.residual),
                    "converged": p.converged,
                    "trace": {
                        "iterations": p.trace.iterations,
                        "converged": p.trace.converged,
                        "fallback_used": p.trace.fallback_used,
                        "residual_history": [float(r) for r in p.trace.residual_history],
                        "counters": p.trace.counters.as_dict(),
                    },
                }
                for p in self.points
            ],
        }

    def to_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n")


@dataclass(frozen=True)
class StepBoundReport:
    """Diagnostic comparison of the grid spacing against 2 / (omega * eta).

    eta is the measured path slope max ||x(lam') - x(lam)|| / ||lam' - lam||_inf
    over sampled adjacent grid pairs; d is the largest consecutive step the
    tracer actually faces.  The bound is advisory: grids violating it are still
    traced, the corrector just works harder.
    """

    omega: float
    eta: float
    bound: float
    d: float
    satisfied: bool
    note: str = ""


def _front_point(bundle: ObjectiveBundle, lam: np.ndarray, x: np.ndarray, trace: SolveTrace) -> FrontPoint:
    return FrontPoint(
        lam=np.asarray(lam, dtype=float).copy(),
        x=x,
        residual=trace.residual,
        objective_values=objective_vector(bundle, x),
        trace=trace,
    )


def _refined_targets(lam_a: np.ndarray, lam_b: np.ndarray, d: float) -> list[np.ndarray]:
    """Waypoints from lam_a (exclusive) to lam_b (inclusive), each step <= d.

    Long row-jump transitions are halved until every sub-step fits; the
    intermediate weights are synthetic and never emitted as front points.
    """
    gap = float(np.abs(lam_b - lam_a).max())
    pieces = 1
    while gap / pieces > d * (1.0 + 1e-9):
        pieces *= 2
    if pieces == 1:
        return [lam_b]
    fractions = np.arange(1, pieces + 1) / pieces
    return [lam_a + t * (lam_b - lam_a) for t in fractions[:-1]] + [lam_b]


def _continuation_step(
    bundle: ObjectiveBundle,
    lam_a: np.ndarray,
    lam_b: np.ndarray,
    x: np.ndarray,
    cfg: SolveConfig,
    d: float,
) -> tuple[np.ndarray, SolveTrace]:
    """Predict-correct from the solution at lam_a to the one at lam_b.

    Returns the corrected solution and a trace whose counters cover every
    predictor call and corrector iteration spent on this transition,
    including synthetic waypoints inserted across long steps.
    """
    spent = CostCounters()
    lam_from = lam_a
    trace: SolveTrace | None = None
    for target in _refined_targets(lam_a, lam_b, d):
        x_pred = predictor(bundle, lam_from, target, x)
        spent = spent + PREDICTOR_COST
        try:
            x, trace = newton_corrector(bundle, target, x_pred, cfg)
        except NonConvergenceError as err:
            x, trace = err.x, err.trace
        spent = spent + trace.counters
        lam_from = target
    trace.counters = spent
    return x, trace


def trace_front(
    bundle: ObjectiveBundle,
    grid: WeightGrid,
    cfg: SolveConfig | None = None,
    x0: np.ndarray | None = None,
) -> ParetoFront:
    """Trace the whole front with one gradient-descent solve plus continuation.

    The first grid weight is solved by gradient descent from x0 (default:
    origin); every later point reuses the previous solution through the
    predictor-corrector step.  Points that fail to converge are flagged in
    their traces and the sweep continues from the best iterate.  If the
    initial solve itself fails, the partial front holds only that flagged
    point.
    """
    cfg = cfg or SolveConfig()
    if bundle.m != grid.m:
        raise ValueError(f"bundle has m={bundle.m} objectives but grid has m={grid.m}")
    if x0 is None:
        x0 = np.zeros(bundle.n)
    total = CostCounters()
    points: list[FrontPoint] = []
    lam0 = grid.points[0]
    try:
        x, trace = gradient_descent(bundle, lam0, x0, cfg)
    except NonConvergenceError as err:
        x, trace = err.x, err.trace
        total = total + trace.counters
        points.append(_front_point(bundle, lam0, x, trace))
        return ParetoFront(points, "pathfollow", total, cfg.epsilon, grid.d, initial_solves=1,
                           note="aborted: initial solve did not converge")
    total = total + trace.counters
    points.append(_front_point(bundle, lam0, x, trace))
    for k in range(len(grid) - 1):
        x, trace = _continuation_step(bundle, grid.points[k], grid.points[k + 1], x, cfg, grid.d)
        total = total + trace.counters
        points.append(_front_point(bundle, grid.points[k + 1], x, trace))
    return ParetoFront(points, "pathfollow", total, cfg.epsilon, grid.d, initial_solves=1)


def naive_front(
    bundle: ObjectiveBundle,
    grid: WeightGrid,
    cfg: SolveConfig | None = None,
    x0: np.ndarray | None = None,
) -> ParetoFront:
    """Baseline: an independent gradient-descent solve at every grid weight.

    Every solve starts from the same x0 (default: origin).  Non-convergence at
    a point flags that point and the run continues.
    """
    cfg = cfg or SolveConfig()
    if bundle.m != grid.m:
        raise ValueError(f"bundle has m={bundle.m} objectives but grid has m={grid.m}")
    if x0 is None:
        x0 = np.zeros(bundle.n)
    total = CostCounters()
    points: list[FrontPoint] = []
    for lam in grid.points:
        try:
            x, trace = gradient_descent(bundle, lam, x0, cfg)
        except NonConvergenceError as err:
            x, trace = err.x, err.trace
        total = total + trace.counters
        points.append(_front_point(bundle, lam, x, trace))
    return ParetoFront(points, "naive", total, cfg.epsilon, grid.d, initial_solves=len(grid))


def trace_front_parallel(
    bundle: ObjectiveBundle,
    grid: WeightGrid,
    workers: int,
    cfg: SolveConfig | None = None,
    x0: np.ndarray | None = None,
) -> ParetoFront:
    """Trace the front in `workers` contiguous path segments, concurrently.

    Each segment pays its own initial gradient-descent solve and then follows
    its stretch of the path; results are concatenated in grid order, so the
    output matches trace_front pointwise up to solver tolerance.  With
    workers >= number of points every segment is a single gradient-descent
    solve and the structure degenerates to the naive baseline's.
    """
    cfg = cfg or SolveConfig()
    if workers < 1:
        raise ValueError("workers must be >= 1")
    segments = np.array_split(np.arange(len(grid)), min(workers, len(grid)))
    segments = [seg for seg in segments if seg.size]
    with ThreadPoolExecutor(max_workers=len(segments)) as pool:
        futures = [
            pool.submit(trace_front, bundle, grid.subgrid(int(seg[0]), int(seg[-1]) + 1), cfg, x0)
            for seg in segments
        ]
        fronts = [f.result() for f in futures]
    points = [p for front in fronts for p in front.points]
    total = CostCounters()
    for front in fronts:
        total = total + front.total_counters
    note = "segments of length 1: every point is an initial solve" if workers >= len(grid) else ""
    return ParetoFront(
        points,
        "parallel",
        total,
        cfg.epsilon,
        grid.d,
        initial_solves=len(segments),
        note=note,
    )


def step_bound(
    bounds: ConvexityBounds,
    bundle: ObjectiveBundle,
    grid: WeightGrid,
    max_pairs: int = 16,
    oracle_epsilon: float = 1e-12,
) -> StepBoundReport:
    """Empirical check of the continuation step-size bound d <= 2/(omega*eta).

    eta is estimated as the largest solution-path slope over sampled adjacent
    grid pairs, with both endpoints solved to oracle accuracy.  The report is
    a diagnostic: exceeding the bound only means the predictor may land
    outside Newton's fast-convergence region.
    """
    transitions = len(grid) - 1
    if transitions < 1:
        raise ValueError("step bound needs a grid with at least two points")
    if transitions <= max_pairs:
        pair_idx = np.arange(transitions)
    else:
        pair_idx = np.unique(np.linspace(0, transitions - 1, max_pairs).round().astype(int))
    eta = 0.0
    cache: dict[int, np.ndarray] = {}

    def oracle(k: int) -> np.ndarray:
        if k not in cache:
            cache[k], _ = solve_to_stationarity(bundle, grid.points[k], epsilon=oracle_epsilon)
        return cache[k]

    for k in pair_idx:
        xa, xb = oracle(int(k)), oracle(int(k) + 1)
        dlam = float(np.abs(grid.points[k + 1] - grid.points[k]).max())
        eta = max(eta, float(np.linalg.norm(xb - xa)) / dlam)
    bound = np.inf if eta == 0.0 else 2.0 / (bounds.omega * eta)
    d_actual = float(grid.step_distances().max())
    return StepBoundReport(
        omega=bounds.omega,
        eta=eta,
        bound=float(bound),
        d=d_actual,
        satisfied=bool(d_actual <= bound),
        note=f"eta from {len(pair_idx)} adjacent pairs solved to {oracle_epsilon:g}",
    )
