"""Evaluation counters shared by the solvers, front tracers, and benchmark report."""

from dataclasses import asdict, dataclass, fields


@dataclass
class CostCounters:
    """Tally of the work one solve (or a whole front run) performed.

    grad_evals counts scalarized-gradient evaluations: one count covers the
    gradients of all m objectives at a single point, which is the unit of work
    of one gradient-descent iteration.  hess_evals counts weighted-Hessian
    assemblies and linear_solves counts SPD factor-and-solve calls; in every
    code path each Hessian assembly is paired with exactly one solve.
    gd_iters and newton_iters split the iteration counts by method.
    wall_time is in seconds and is reported only, never asserted.
    """

    grad_evals: int = 0
    hess_evals: int = 0
    linear_solves: int = 0
    gd_iters: int = 0
    newton_iters: int = 0
    wall_time: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"counter {f.name} must be non-negative")

    def merge(self, other: "CostCounters") -> "CostCounters":
        """Return a new tally with every field summed."""
        return CostCounters(
            grad_evals=self.grad_evals + other.grad_evals,
            hess_evals=self.hess_evals + other.hess_evals,
            linear_solves=self.linear_solves + other.linear_solves,
            gd_iters=self.gd_iters + other.gd_iters,
            newton_iters=self.newton_iters + other.newton_iters,
            wall_time=self.wall_time + other.wall_time,
        )

    __add__ = merge

    def as_dict(self) -> dict:
        return asdict(self)
