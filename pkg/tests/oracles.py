"""Independent reference computations the tests check the package against.

Everything here is deliberately written from scratch against the problem
definitions (hand-coded matrices, dense numpy solves, exhaustive
enumeration) so that agreement with the package is meaningful.
"""

import itertools

import numpy as np

# Toy problem literals: f1 = (x1-1)^2 + (x1-x2)^2, f2 = (x2-3)^2 + (x1-x2)^2.
TOY_H1 = np.array([[4.0, -2.0], [-2.0, 2.0]])
TOY_H2 = np.array([[2.0, -2.0], [-2.0, 4.0]])
TOY_B1 = TOY_H1 @ np.array([1.0, 1.0])  # = (2, 0)
TOY_B2 = TOY_H2 @ np.array([3.0, 3.0])  # = (0, 6)


def toy_solution(t: float) -> np.ndarray:
    """Closed-form minimizer of t*f1 + (1-t)*f2 via a dense linear solve."""
    H = t * TOY_H1 + (1.0 - t) * TOY_H2
    return np.linalg.solve(H, t * TOY_B1 + (1.0 - t) * TOY_B2)


def central_grad(f, x: np.ndarray, h: float) -> np.ndarray:
    out = np.zeros_like(x, dtype=float)
    for i in range(x.size):
        e = np.zeros_like(x, dtype=float)
        e[i] = h
        out[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return out


def central_jacobian(g, x: np.ndarray, h: float) -> np.ndarray:
    cols = []
    for i in range(x.size):
        e = np.zeros_like(x, dtype=float)
        e[i] = h
        cols.append((np.asarray(g(x + e)) - np.asarray(g(x - e))) / (2.0 * h))
    return np.stack(cols, axis=1)


def brute_force_lattice(m: int, d: float) -> set:
    """All admissible interior lattice multiples by exhaustive enumeration.

    Returns frozensets of integer tuples (k_1, ..., k_{m-1}) with k_i >= 1,
    lambda_i = k_i * d, and 1 - d * sum(k) > 0.
    """
    inv = 1.0 / d
    cap = round(inv) - 1 if abs(inv - round(inv)) <= 1e-9 * max(1.0, inv) else int(np.ceil(inv)) - 1
    out = set()
    for ks in itertools.product(range(1, cap + 1), repeat=m - 1):
        if sum(ks) <= cap:
            out.add(ks)
    return out


def grid_multiples(grid) -> set:
    """Integer multiples of d recovered from a grid's free coordinates."""
    ks = np.round(grid.points[:, :-1] / grid.d).astype(int)
    return {tuple(int(v) for v in row) for row in ks}
