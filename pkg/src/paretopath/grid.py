"""Weight grids on the interior of the probability simplex, in traversal order.

A grid with spacing d collects every lattice point lambda_i = k_i * d
(integers k_i >= 1) for the first m-1 coordinates whose remainder
lambda_m = 1 - sum is strictly positive.  Points are ordered along a
boustrophedon path: the innermost free coordinate sweeps back and forth,
reversing at each row turn, so consecutive points usually differ in a single
coordinate by d.  Where the simplex truncates a row (m >= 3) the jump to the
next row can be larger; those transitions are reported as long steps.
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

# 1/d within this relative tolerance of an integer is treated as integral
INTEGRAL_TOL = 1e-9


class EmptyGridError(ValueError):
    """No admissible interior lattice point exists (d too large for m)."""


class UndefinedSpacingError(ValueError):
    """Spacing is undefined for grids with fewer than two points."""


@dataclass(frozen=True)
class WeightGrid:
    """Interior simplex lattice with spacing d, stored in path order."""

    m: int
    d: float
    points: np.ndarray  # shape (p, m)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.m or pts.shape[0] == 0:
            raise ValueError(f"points must have shape (p, {self.m}) with p >= 1")
        if np.any(pts <= 0.0) or np.any(pts >= 1.0):
            raise ValueError("grid points must lie strictly inside the simplex")
        if np.abs(pts.sum(axis=1) - 1.0).max() > 1e-12:
            raise ValueError("grid rows must sum to 1")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]

    def step_distances(self) -> np.ndarray:
        """Max-coordinate distance of each consecutive path transition."""
        if len(self) < 2:
            return np.empty(0)
        return np.abs(np.diff(self.points, axis=0)).max(axis=1)

    def long_step_indices(self) -> list[int]:
        """Indices k whose transition k -> k+1 exceeds d (row jumps, m >= 3)."""
        dists = self.step_distances()
        return [int(k) for k in np.nonzero(dists > self.d * (1.0 + 1e-9))[0]]

    def subgrid(self, start: int, stop: int) -> "WeightGrid":
        """Contiguous slice of the path as its own grid (used by parallel tracing)."""
        if not (0 <= start < stop <= len(self)):
            raise ValueError(f"invalid slice [{start}, {stop}) for grid of size {len(self)}")
        return WeightGrid(self.m, self.d, self.points[start:stop])

    def to_csv(self, path: str | Path) -> None:
        """Write the grid in path order, one weight vector per row."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow([f"lambda_{i + 1}" for i in range(self.m)])
            for row in self.points:
                writer.writerow([repr(float(v)) for v in row])


def _snake_tuples(num_free: int, k_max: int, sum_max: int) -> list[tuple[int, ...]]:
    """Admissible integer tuples in boustrophedon order.

    Each level keeps its own sweep direction and flips it after every
    non-empty visit, so the innermost coordinate reverses at each row turn.
    """
    out: list[tuple[int, ...]] = []
    direction = [1] * num_free

    def visit(level: int, used: int, prefix: tuple[int, ...]) -> None:
        deeper = num_free - level - 1
        hi = min(k_max, sum_max - used - deeper)  # reserve >= 1 per deeper coordinate
        if hi < 1:
            return
        ks = range(1, hi + 1) if direction[level] > 0 else range(hi, 0, -1)
        if deeper == 0:
            out.extend(prefix + (k,) for k in ks)
        else:
            for k in ks:
                visit(level + 1, used + k, prefix + (k,))
        direction[level] *= -1

    visit(0, 0, ())
    return out


def build_grid(m: int, d: float) -> WeightGrid:
    """All interior lattice points of spacing d on the m-simplex, in path order.

    For integral 1/d = N this is the standard interior grid with the first m-1
    coordinates in {d, 2d, ..., (N-1)d} summing to at most (N-1)d.  For
    non-integral 1/d the coordinate multiples are truncated at ceil(1/d) - 1.
    """
    if m < 2:
        raise ValueError("need m >= 2 objectives")
    if not (0.0 < d < 1.0):
        raise ValueError("d must be in (0,1)")
    inv = 1.0 / d
    if abs(inv - round(inv)) <= INTEGRAL_TOL * max(1.0, inv):
        k_cap = int(round(inv)) - 1
    else:
        k_cap = math.ceil(inv) - 1
    # k_cap bounds both each coordinate multiple and the multiples' sum; the
    # sum bound keeps the last coordinate 1 - d*sum strictly positive
    tuples = _snake_tuples(m - 1, k_cap, k_cap) if k_cap >= 1 else []
    if not tuples:
        raise EmptyGridError(f"no interior lattice point for m={m}, d={d}")
    ks = np.array(tuples, dtype=float)
    pts = np.empty((len(tuples), m))
    pts[:, : m - 1] = ks * d
    pts[:, m - 1] = 1.0 - pts[:, : m - 1].sum(axis=1)
    return WeightGrid(m=m, d=d, points=pts)


def grid_spacing(grid: WeightGrid) -> float:
    """Minimum max-coordinate distance over all point pairs, exhaustively.

    Quadratic in the number of points by design: this is the verification
    oracle for the d bookkeeping, not a hot path.
    """
    pts = grid.points
    p = pts.shape[0]
    if p < 2:
        raise UndefinedSpacingError("spacing needs at least two grid points")
    best = math.inf
    for i in range(p - 1):
        dists = np.abs(pts[i + 1 :] - pts[i]).max(axis=1)
        best = min(best, float(dists.min()))
    return best
