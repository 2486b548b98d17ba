"""Strongly convex multi-objective problem instances and their scalarizations.

An :class:`ObjectiveBundle` packages m twice-differentiable objectives on R^n
together with uniform Hessian eigenvalue bounds 0 < c <= L shared by all of
them.  Weighted-sum scalarizations over the open probability simplex are the
only way the solvers ever look at a bundle, so the scalarize_* helpers below
are the workhorses of the whole package.

Built-in problem kinds (addressable by name from the CLI):

* ``paper-toy``            -- two shifted quadratics on R^2 coupled through an
                              (x1 - x2)^2 disagreement term; every quantity has
                              a closed form, which the tests lean on.
* ``random-quadratic``     -- seeded quadratics with prescribed spectrum [c, L].
* ``quadratic-logistic``   -- quadratics plus log(1 + exp(w.x)) terms; the
                              Hessian varies with x, so Newton correction
                              genuinely iterates.
"""

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy.special import expit

Array = np.ndarray

# Weight vectors must sum to one within this tolerance.
WEIGHT_SUM_TOL = 1e-12

PROBLEM_KINDS = ("paper-toy", "random-quadratic", "quadratic-logistic")


class InvalidWeightError(ValueError):
    """Weight vector lies outside the open probability simplex."""


# ---------------------------------------------------------------------------
# Core types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvexityBounds:
    """Uniform Hessian eigenvalue bounds shared by every objective.

    c is the strong-convexity constant (smallest admissible eigenvalue) and L
    the smoothness constant (largest).  ``estimated`` marks bounds obtained by
    sampling rather than declared by a generator.
    """

    c: float
    L: float
    estimated: bool = False

    def __post_init__(self):
        if not (0.0 < self.c <= self.L):
            raise ValueError(f"bounds must satisfy 0 < c <= L, got c={self.c}, L={self.L}")

    @property
    def omega(self) -> float:
        """Condition-number-style constant L/c used by the step bound."""
        return self.L / self.c


@dataclass(frozen=True)
class ObjectiveBundle:
    """A vector of m strongly convex objectives on R^n.

    values, grads and hessians each hold one callable per objective taking an
    n-vector.  bounds may be None for user-supplied problems, in which case
    :func:`convexity_bounds` estimates them by sampling.  Bundles are
    immutable and safe to share across concurrent workers.
    """

    name: str
    n: int
    m: int
    values: tuple[Callable[[Array], float], ...]
    grads: tuple[Callable[[Array], Array], ...]
    hessians: tuple[Callable[[Array], Array], ...]
    bounds: ConvexityBounds | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("decision dimension n must be >= 1")
        if self.m < 2:
            raise ValueError("need at least two objectives")
        for label, fns in (("values", self.values), ("grads", self.grads), ("hessians", self.hessians)):
            if len(fns) != self.m:
                raise ValueError(f"{label} must supply one callable per objective ({self.m})")


@dataclass(frozen=True)
class ProblemSpec:
    """Serializable recipe for a built-in problem instance."""

    kind: str
    n: int = 2
    m: int = 2
    c: float = 1.0
    L: float = 10.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in PROBLEM_KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}, expected one of {PROBLEM_KINDS}")
        if self.n < 1 or self.m < 2:
            raise ValueError("need n >= 1 and m >= 2")
        if not (0.0 < self.c <= self.L):
            raise ValueError(f"need 0 < c <= L, got c={self.c}, L={self.L}")

    def to_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n")

    def as_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "m": self.m, "c": self.c, "L": self.L, "seed": self.seed}

    @classmethod
    def from_json(cls, path: str | Path) -> "ProblemSpec":
        raw = json.loads(Path(path).read_text())
        if not isinstance(raw, dict) or "kind" not in raw:
            raise ValueError(f"problem spec {path} must be a JSON object with a 'kind' key")
        known = {"kind", "n", "m", "c", "L", "seed"}
        extra = set(raw) - known
        if extra:
            raise ValueError(f"unknown problem spec keys: {sorted(extra)}")
        return cls(**raw)


# ---------------------------------------------------------------------------
# Validation and scalarization
# ---------------------------------------------------------------------------


def check_weights(m: int, lam: Sequence[float]) -> Array:
    """Validate lam as a point of the open probability simplex, return it as an array.

    Every coordinate must be strictly inside (0, 1) and the coordinates must
    sum to one within WEIGHT_SUM_TOL.
    """
    arr = np.asarray(lam, dtype=float)
    if arr.shape != (m,):
        raise ValueError(f"weight vector must have shape ({m},), got {arr.shape}")
    if abs(arr.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise InvalidWeightError(f"weights must sum to 1 within {WEIGHT_SUM_TOL}, got sum {arr.sum()!r}")
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise InvalidWeightError(f"weights must lie strictly inside (0, 1), got {arr}")
    return arr


def _check_point(bundle: ObjectiveBundle, x: Sequence[float]) -> Array:
    arr = np.asarray(x, dtype=float)
    if arr.shape != (bundle.n,):
        raise ValueError(f"point must have shape ({bundle.n},), got {arr.shape}")
    return arr


def scalarize_value(bundle: ObjectiveBundle, lam: Sequence[float], x: Sequence[float]) -> float:
    """Weighted objective sum(lam_i * f_i(x))."""
    lam = check_weights(bundle.m, lam)
    x = _check_point(bundle, x)
    return float(sum(w * f(x) for w, f in zip(lam, bundle.values)))


def scalarize_grad(bundle: ObjectiveBundle, lam: Sequence[float], x: Sequence[float]) -> Array:
    """Gradient of the weighted objective, sum(lam_i * grad f_i(x))."""
    lam = check_weights(bundle.m, lam)
    x = _check_point(bundle, x)
    out = np.zeros(bundle.n)
    for w, g in zip(lam, bundle.grads):
        out += w * np.asarray(g(x), dtype=float)
    return out


def scalarize_hess(bundle: ObjectiveBundle, lam: Sequence[float], x: Sequence[float]) -> Array:
    """Hessian of the weighted objective, sum(lam_i * hess f_i(x))."""
    lam = check_weights(bundle.m, lam)
    x = _check_point(bundle, x)
    out = np.zeros((bundle.n, bundle.n))
    for w, h in zip(lam, bundle.hessians):
        out += w * np.asarray(h(x), dtype=float)
    return out


def gradient_stack(bundle: ObjectiveBundle, x: Sequence[float]) -> Array:
    """All m objective gradients at x as an (m, n) array.

    Costs the same as one scalarized-gradient evaluation; the predictor uses
    it to form weight-increment combinations.
    """
    x = _check_point(bundle, x)
    return np.stack([np.asarray(g(x), dtype=float) for g in bundle.grads])


def objective_vector(bundle: ObjectiveBundle, x: Sequence[float]) -> Array:
    """All m objective values at x as an m-vector."""
    x = _check_point(bundle, x)
    return np.array([f(x) for f in bundle.values], dtype=float)


def convexity_bounds(bundle: ObjectiveBundle, samples: int = 16, seed: int = 0) -> ConvexityBounds:
    """Return declared bounds, or estimate them by eigenvalue sampling.

    For bundles without declared bounds the Hessian of every objective is
    eigendecomposed at ``samples`` seeded standard-normal points; the extreme
    eigenvalues found are returned flagged as estimated.
    """
    if bundle.bounds is not None:
        return bundle.bounds
    rng = np.random.default_rng(seed)
    lo, hi = math.inf, -math.inf
    for _ in range(samples):
        x = rng.standard_normal(bundle.n)
        for h in bundle.hessians:
            eigs = np.linalg.eigvalsh(np.asarray(h(x), dtype=float))
            lo = min(lo, eigs[0])
            hi = max(hi, eigs[-1])
    if lo <= 0.0:
        raise ValueError(f"sampled Hessians are not positive definite (min eigenvalue {lo})")
    return ConvexityBounds(c=lo, L=hi, estimated=True)


# ---------------------------------------------------------------------------
# Built-in problem generators
# ---------------------------------------------------------------------------

_TOY_H1 = np.array([[4.0, -2.0], [-2.0, 2.0]])
_TOY_H2 = np.array([[2.0, -2.0], [-2.0, 4.0]])

# Logistic-term shape constants for quadratic-logistic bundles.  The linear
# term is chosen so that every objective gradient at the origin has norm
# exactly _ORIGIN_GRAD; solves started from the default zero vector then take
# iteration counts governed by log(_ORIGIN_GRAD / epsilon), independent of
# problem scale.
_ORIGIN_GRAD = 0.02
_LOGISTIC_SCALE = 0.5


def quadratic_bundle(mats: Sequence[Array], linear: Sequence[Array], name: str = "quadratic") -> ObjectiveBundle:
    """Bundle of quadratics f_i(x) = x.A_i.x/2 - b_i.x with exact declared bounds.

    mats must be symmetric positive definite; bounds are taken from the
    extreme eigenvalues over all of them.  With A_i = I the minimizer of f_i
    is b_i, which makes anchored test problems one-liners.
    """
    mats = [np.asarray(a, dtype=float) for a in mats]
    linear = [np.asarray(b, dtype=float) for b in linear]
    if len(mats) != len(linear):
        raise ValueError("need one linear term per matrix")
    n = mats[0].shape[0]
    for a, b in zip(mats, linear):
        if a.shape != (n, n) or b.shape != (n,):
            raise ValueError("matrix/vector shapes disagree")
        if np.abs(a - a.T).max() > 1e-10 * max(1.0, np.abs(a).max()):
            raise ValueError("quadratic matrices must be symmetric")
    eigs = np.concatenate([np.linalg.eigvalsh(a) for a in mats])
    bounds = ConvexityBounds(c=float(eigs.min()), L=float(eigs.max()))

    def value(a, b):
        return lambda x: float(0.5 * x @ a @ x - b @ x)

    def grad(a, b):
        return lambda x: a @ x - b

    def hess(a):
        return lambda x: a.copy()

    return ObjectiveBundle(
        name=name,
        n=n,
        m=len(mats),
        values=tuple(value(a, b) for a, b in zip(mats, linear)),
        grads=tuple(grad(a, b) for a, b in zip(mats, linear)),
        hessians=tuple(hess(a) for a in mats),
        bounds=bounds,
    )


def _toy_bundle() -> ObjectiveBundle:
    """Two coupled quadratics on R^2 with individual minimizers (1,1) and (3,3)."""

    def f1(x):
        return float((x[0] - 1.0) ** 2 + (x[0] - x[1]) ** 2)

    def f2(x):
        return float((x[1] - 3.0) ** 2 + (x[0] - x[1]) ** 2)

    def g1(x):
        return np.array([2.0 * (x[0] - 1.0) + 2.0 * (x[0] - x[1]), -2.0 * (x[0] - x[1])])

    def g2(x):
        return np.array([2.0 * (x[0] - x[1]), 2.0 * (x[1] - 3.0) - 2.0 * (x[0] - x[1])])

    # Both Hessians share the spectrum {3 - sqrt(5), 3 + sqrt(5)}.
    bounds = ConvexityBounds(c=3.0 - math.sqrt(5.0), L=3.0 + math.sqrt(5.0))
    return ObjectiveBundle(
        name="paper-toy",
        n=2,
        m=2,
        values=(f1, f2),
        grads=(g1, g2),
        hessians=(lambda x: _TOY_H1.copy(), lambda x: _TOY_H2.copy()),
        bounds=bounds,
    )


def _random_orthogonal(rng: np.random.Generator, n: int) -> Array:
    mat = rng.standard_normal((n, n))
    q, r = np.linalg.qr(mat)
    # sign fix makes the factorization unique, hence reproducible
    return q * np.sign(np.diag(r))


def _spd_matrix(rng: np.random.Generator, n: int, c: float, L: float) -> Array:
    if c == L:
        return c * np.eye(n)
    spectrum = np.linspace(c, L, n)
    q = _random_orthogonal(rng, n)
    a = q.T @ (spectrum[:, None] * q)
    return 0.5 * (a + a.T)


def _random_quadratic(spec: ProblemSpec) -> ObjectiveBundle:
    rng = np.random.default_rng(spec.seed)
    mats = [_spd_matrix(rng, spec.n, spec.c, spec.L) for _ in range(spec.m)]
    linear = [rng.standard_normal(spec.n) for _ in range(spec.m)]
    bundle = quadratic_bundle(mats, linear, name=f"random-quadratic(n={spec.n},m={spec.m},seed={spec.seed})")
    # spectrum endpoints are exact by construction, so declare them directly
    return replace(bundle, bounds=ConvexityBounds(c=spec.c, L=spec.L))


def _quadratic_logistic(spec: ProblemSpec) -> ObjectiveBundle:
    rng = np.random.default_rng(spec.seed)
    n, m = spec.n, spec.m
    mats, linear, logit_w = [], [], []
    for _ in range(m):
        a = _spd_matrix(rng, n, spec.c, spec.L)
        w = _LOGISTIC_SCALE * rng.standard_normal((n, n)) / math.sqrt(n)
        u = rng.standard_normal(n)
        u /= np.linalg.norm(u)
        # grad f_i(0) = -_ORIGIN_GRAD * u exactly: the logistic pull at the
        # origin, 0.5 * sum_j w_j, is folded into the linear term
        b = _ORIGIN_GRAD * u + 0.5 * w.sum(axis=0)
        mats.append(a)
        linear.append(b)
        logit_w.append(w)

    def value(a, b, w):
        return lambda x: float(0.5 * x @ a @ x - b @ x + np.logaddexp(0.0, w @ x).sum())

    def grad(a, b, w):
        return lambda x: a @ x - b + w.T @ expit(w @ x)

    def hess(a, w):
        def h(x):
            s = expit(w @ x)
            hmat = a + w.T @ ((s * (1.0 - s))[:, None] * w)
            return 0.5 * (hmat + hmat.T)

        return h

    # logistic curvature is positive semi-definite and bounded by w.w/4 per term
    L_adj = spec.L + 0.25 * max(float((w**2).sum()) for w in logit_w)
    return ObjectiveBundle(
        name=f"quadratic-logistic(n={n},m={m},seed={spec.seed})",
        n=n,
        m=m,
        values=tuple(value(a, b, w) for a, b, w in zip(mats, linear, logit_w)),
        grads=tuple(grad(a, b, w) for a, b, w in zip(mats, linear, logit_w)),
        hessians=tuple(hess(a, w) for a, w in zip(mats, logit_w)),
        bounds=ConvexityBounds(c=spec.c, L=L_adj),
    )


def make_problem(spec: ProblemSpec) -> ObjectiveBundle:
    """Instantiate a built-in problem from its spec.

    The same spec always produces bit-identical evaluator data (seeded
    generation), so fronts computed from it are reproducible.
    """
    if spec.kind == "paper-toy":
        return _toy_bundle()
    if spec.kind == "random-quadratic":
        return _random_quadratic(spec)
    if spec.kind == "quadratic-logistic":
        return _quadratic_logistic(spec)
    raise ValueError(f"unknown problem kind {spec.kind!r}")


# Default instances behind the CLI names.
DEFAULT_SPECS = {
    "paper-toy": ProblemSpec("paper-toy"),
    "random-quadratic": ProblemSpec("random-quadratic", n=8, m=2, c=1.0, L=100.0, seed=42),
    "quadratic-logistic": ProblemSpec("quadratic-logistic", n=6, m=2, c=1.0, L=20.0, seed=7),
}


def resolve_problem(name_or_path: str, seed: int | None = None) -> ObjectiveBundle:
    """Build a bundle from a registry name or a ProblemSpec JSON file path.

    For generated kinds an explicit seed overrides the default; paper-toy is a
    fixed instance and ignores it.
    """
    if name_or_path in DEFAULT_SPECS:
        spec = DEFAULT_SPECS[name_or_path]
        if seed is not None and spec.kind != "paper-toy":
            spec = replace(spec, seed=seed)
        return make_problem(spec)
    path = Path(name_or_path)
    if path.exists():
        return make_problem(ProblemSpec.from_json(path))
    raise ValueError(
        f"unknown problem {name_or_path!r}: expected one of {sorted(DEFAULT_SPECS)} or a spec JSON path"
    )
