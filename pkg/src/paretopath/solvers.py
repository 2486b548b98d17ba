"""Scalarized solvers: gradient descent, tangent predictor, Newton corrector.

All three work on the weighted objective F(x; lam) = sum(lam_i f_i(x)) of an
ObjectiveBundle and stop on the scalarized gradient norm ||grad F|| <= epsilon.
The predictor moves a solution at one weight vector toward the solution at a
neighbouring one using the implicit-function tangent of the solution path; the
corrector polishes with undamped Newton steps, falling back to gradient
descent if Newton stalls.
"""

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .counters import CostCounters
from .problems import (
    ObjectiveBundle,
    _check_point,
    check_weights,
    convexity_bounds,
    gradient_stack,
    scalarize_grad,
    scalarize_hess,
)

# Relative asymmetry beyond which a matrix is rejected by spd_solve.
ASYMMETRY_TOL = 1e-10

# Newton falls back to gradient descent after this many consecutive
# non-decreasing residuals.
NEWTON_STALL_LIMIT = 3


class AssumptionViolatedError(RuntimeError):
    """A positive-definiteness assumption failed (non-SPD weighted Hessian)."""


class NonConvergenceError(RuntimeError):
    """Iteration budget exhausted; carries the last iterate and its trace."""

    def __init__(self, message: str, x: np.ndarray, trace: "SolveTrace"):
        super().__init__(message)
        self.x = x
        self.trace = trace


@dataclass
class SolveConfig:
    """Tolerances and iteration caps shared by all solvers.

    epsilon is the stationarity tolerance on the scalarized gradient norm.
    Gradient descent always uses the fixed step 1/L from the bundle's bounds.
    """

    epsilon: float = 1e-7
    gd_max_iters: int = 200_000
    newton_max_iters: int = 50

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be positive")
        if self.gd_max_iters < 1 or self.newton_max_iters < 1:
            raise ValueError("iteration caps must be >= 1")


@dataclass
class SolveTrace:
    """Per-solve record: iteration count, residual history, and cost delta.

    residual_history holds the gradient norm at every visited iterate, so its
    length is iterations + 1.  fallback_used marks Newton runs that finished
    under the gradient-descent safeguard.
    """

    iterations: int
    residual_history: list[float] = field(default_factory=list)
    counters: CostCounters = field(default_factory=CostCounters)
    converged: bool = False
    fallback_used: bool = False

    @property
    def residual(self) -> float:
        return self.residual_history[-1]


def spd_solve(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve mat @ y = rhs for symmetric positive definite mat via Cholesky.

    Never forms an inverse.  Asymmetry beyond ASYMMETRY_TOL (relative) is an
    argument error; a failed factorization raises AssumptionViolatedError.
    """
    mat = np.asarray(mat, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or rhs.shape != (mat.shape[0],):
        raise ValueError(f"shape mismatch: matrix {mat.shape}, rhs {rhs.shape}")
    scale = max(1.0, float(np.abs(mat).max()))
    if float(np.abs(mat - mat.T).max()) > ASYMMETRY_TOL * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    try:
        factor = cho_factor(mat, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise AssumptionViolatedError(f"Cholesky factorization failed: {exc}") from exc
    return cho_solve(factor, rhs, check_finite=False)


def gradient_descent(
    bundle: ObjectiveBundle,
    lam: np.ndarray,
    x0: np.ndarray,
    cfg: SolveConfig | None = None,
) -> tuple[np.ndarray, SolveTrace]:
    """Fixed-step gradient descent on the weighted objective.

    Steps by 1/L until ||grad|| <= cfg.epsilon.  Returns the solution and its
    trace; raises NonConvergenceError (carrying the trace) if the iteration
    cap is hit first.
    """
    cfg = cfg or SolveConfig()
    lam = check_weights(bundle.m, lam)
    x = _check_point(bundle, x0).copy()
    step = 1.0 / convexity_bounds(bundle).L
    counters = CostCounters()
    history: list[float] = []
    start = time.perf_counter()
    for it in range(cfg.gd_max_iters + 1):
        g = scalarize_grad(bundle, lam, x)
        counters.grad_evals += 1
        r = float(np.linalg.norm(g))
        history.append(r)
        if r <= cfg.epsilon:
            counters.wall_time = time.perf_counter() - start
            return x, SolveTrace(it, history, counters, converged=True)
        if it == cfg.gd_max_iters:
            break
        x = x - step * g
        counters.gd_iters += 1
    counters.wall_time = time.perf_counter() - start
    trace = SolveTrace(cfg.gd_max_iters, history, counters, converged=False)
    raise NonConvergenceError(
        f"gradient descent did not reach {cfg.epsilon:g} in {cfg.gd_max_iters} iterations", x, trace
    )


def predictor(
    bundle: ObjectiveBundle,
    lam_from: np.ndarray,
    lam_to: np.ndarray,
    x: np.ndarray,
) -> np.ndarray:
    """First-order continuation step from the solution at lam_from toward lam_to.

    Returns x - H(x; lam_from)^{-1} sum_i (lam_to_i - lam_from_i) grad f_i(x),
    the tangent of the solution path.  Exactly one Hessian assembly and one
    linear solve; for a converged x the prediction error is second order in
    the weight increment.
    """
    lam_from = check_weights(bundle.m, lam_from)
    lam_to = check_weights(bundle.m, lam_to)
    x = _check_point(bundle, x)
    hess = scalarize_hess(bundle, lam_from, x)
    rhs = (lam_to - lam_from) @ gradient_stack(bundle, x)
    return x - spd_solve(hess, rhs)


# Fixed work of one predictor call, tallied by the front tracer.
PREDICTOR_COST = CostCounters(grad_evals=1, hess_evals=1, linear_solves=1)


def newton_corrector(
    bundle: ObjectiveBundle,
    lam: np.ndarray,
    x0: np.ndarray,
    cfg: SolveConfig | None = None,
) -> tuple[np.ndarray, SolveTrace]:
    """Undamped Newton iteration on the weighted gradient, with a GD safeguard.

    Stops when ||grad|| <= cfg.epsilon.  If the residual fails to decrease
    NEWTON_STALL_LIMIT times in a row, or the Newton cap is hit, the solve
    restarts as gradient descent from the best iterate seen and the returned
    trace is marked fallback_used.
    """
    cfg = cfg or SolveConfig()
    lam = check_weights(bundle.m, lam)
    x = _check_point(bundle, x0).copy()
    counters = CostCounters()
    history: list[float] = []
    start = time.perf_counter()
    best_x, best_r = x, np.inf
    prev_r, stalls = np.inf, 0
    steps = 0
    while True:
        g = scalarize_grad(bundle, lam, x)
        counters.grad_evals += 1
        r = float(np.linalg.norm(g))
        history.append(r)
        if r <= cfg.epsilon:
            counters.wall_time = time.perf_counter() - start
            return x, SolveTrace(steps, history, counters, converged=True)
        if r < best_r:
            best_x, best_r = x, r
        stalls = stalls + 1 if r >= prev_r else 0
        prev_r = r
        if stalls >= NEWTON_STALL_LIMIT or steps >= cfg.newton_max_iters:
            break
        hess = scalarize_hess(bundle, lam, x)
        counters.hess_evals += 1
        dx = spd_solve(hess, g)
        counters.linear_solves += 1
        x = x - dx
        counters.newton_iters += 1
        steps += 1

    # safeguard: restart as gradient descent from the best iterate seen
    try:
        x_gd, gd_trace = gradient_descent(bundle, lam, best_x, cfg)
        failed = None
    except NonConvergenceError as err:
        x_gd, gd_trace, failed = err.x, err.trace, err
    counters = counters + gd_trace.counters
    counters.wall_time = time.perf_counter() - start
    # the first GD residual re-measures best_x, already present in history
    history = history + gd_trace.residual_history[1:]
    trace = SolveTrace(
        steps + gd_trace.iterations,
        history,
        counters,
        converged=gd_trace.converged,
        fallback_used=True,
    )
    if failed is not None:
        raise NonConvergenceError(
            f"Newton corrector stalled and the gradient-descent fallback did not "
            f"reach {cfg.epsilon:g} either",
            x_gd,
            trace,
        )
    return x_gd, trace


def solve_to_stationarity(
    bundle: ObjectiveBundle,
    lam: np.ndarray,
    x0: np.ndarray | None = None,
    epsilon: float = 1e-12,
    max_newton: int = 100,
) -> tuple[np.ndarray, SolveTrace]:
    """High-accuracy stationary point, used as the ground-truth oracle.

    Safeguarded Newton from x0 (default: origin) down to a tight tolerance.
    """
    if x0 is None:
        x0 = np.zeros(bundle.n)
    cfg = SolveConfig(epsilon=epsilon, newton_max_iters=max_newton)
    return newton_corrector(bundle, lam, x0, cfg)
