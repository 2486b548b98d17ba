"""Pareto front tracing for strongly convex multi-objective problems.

The front of min_x (f_1(x), ..., f_m(x)) is swept over a grid of weighted-sum
scalarizations: one gradient-descent solve anchors the first weight vector,
then a tangent predictor plus Newton corrector walks the solution path from
weight to weight.  A naive baseline (full solve per weight) and evaluation
counters make the cost difference between the two regimes measurable.
"""

from .bench import (
    BenchReport,
    compare_fronts,
    fd_validate,
    front_report_row,
    gradient_equivalent_cost,
    run_benchmark,
)
from .counters import CostCounters
from .grid import (
    EmptyGridError,
    UndefinedSpacingError,
    WeightGrid,
    build_grid,
    grid_spacing,
)
from .pathfollow import (
    FrontPoint,
    ParetoFront,
    StepBoundReport,
    naive_front,
    step_bound,
    trace_front,
    trace_front_parallel,
)
from .problems import (
    ConvexityBounds,
    InvalidWeightError,
    ObjectiveBundle,
    ProblemSpec,
    check_weights,
    convexity_bounds,
    gradient_stack,
    make_problem,
    objective_vector,
    quadratic_bundle,
    resolve_problem,
    scalarize_grad,
    scalarize_hess,
    scalarize_value,
)
from .solvers import (
    AssumptionViolatedError,
    NonConvergenceError,
    SolveConfig,
    SolveTrace,
    gradient_descent,
    newton_corrector,
    predictor,
    solve_to_stationarity,
    spd_solve,
)
from .cli import RunConfig, main

__version__ = "0.1.0"

__all__ = [
    "AssumptionViolatedError",
    "BenchReport",
    "ConvexityBounds",
    "CostCounters",
    "EmptyGridError",
    "FrontPoint",
    "InvalidWeightError",
    "NonConvergenceError",
    "ObjectiveBundle",
    "ParetoFront",
    "ProblemSpec",
    "RunConfig",
    "SolveConfig",
    "SolveTrace",
    "StepBoundReport",
    "UndefinedSpacingError",
    "WeightGrid",
    "build_grid",
    "check_weights",
    "compare_fronts",
    "convexity_bounds",
    "fd_validate",
    "front_report_row",
    "gradient_descent",
    "gradient_equivalent_cost",
    "gradient_stack",
    "grid_spacing",
    "main",
    "make_problem",
    "naive_front",
    "newton_corrector",
    "objective_vector",
    "predictor",
    "quadratic_bundle",
    "resolve_problem",
    "run_benchmark",
    "scalarize_grad",
    "scalarize_hess",
    "scalarize_value",
    "solve_to_stationarity",
    "spd_solve",
    "step_bound",
    "trace_front",
    "trace_front_parallel",
]
