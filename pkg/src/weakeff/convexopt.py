"""Sampled convexity checks and harnesses for convex / strongly convex problems.

Every check here is one-sided: an empty violation list means "consistent with"
the property on the drawn samples, a nonempty one refutes it with a witness
that can be re-evaluated by hand. Reports carry the seed that produced them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from . import _backend
from .effset import (
    PointSet,
    SolutionSet,
    as_point_set,
    condition_alpha,
    condition_beta,
    efficient_set,
    efficient_solutions,
    strictly_efficient,
    weakly_efficient_solutions,
)
from .geom2d import DegeneratePolygon, Polygon2, example_polygon
from .order import InvalidArgument

DEFAULT_TS = (0.25, 0.5, 0.75)
RANDOM_TS = 5
TOL = 1e-9
FDH_SLACK = 1e-6


@dataclass
class ConvexDomain:
    """Box ``[lower, upper]`` optionally cut down by constraints ``g_j(x) <= 0``.

    Constraint domains are sampled by rejection from the box. Convexity of the
    constraints is the caller's claim; nothing here proves it.
    """

    lower: np.ndarray
    upper: np.ndarray
    constraints: tuple = ()
    max_rejections: int = 1000

    def __post_init__(self):
        self.lower = np.atleast_1d(np.asarray(self.lower, dtype=np.float64))
        self.upper = np.atleast_1d(np.asarray(self.upper, dtype=np.float64))
        if self.lower.shape != self.upper.shape or (self.lower > self.upper).any():
            raise InvalidArgument("box bounds must have equal shape and lower <= upper")
        self.constraints = tuple(self.constraints)

    @property
    def dim(self) -> int:
        return self.lower.size

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=np.float64)
        if (x < self.lower).any() or (x > self.upper).any():
            return False
        return all(g(x) <= 0 for g in self.constraints)

    def sample(self, rng: np.random.Generator, k: int) -> np.ndarray:
        out = []
        tries = 0
        while len(out) < k:
            batch = rng.uniform(self.lower, self.upper, size=(max(k, 16), self.dim))
            for x in batch:
                if all(g(x) <= 0 for g in self.constraints):
                    out.append(x)
                    if len(out) == k:
                        break
            tries += 1
            if tries > self.max_rejections:
                raise RuntimeError("domain sampler failed: constraints reject almost every box sample")
        return np.array(out)


def simplex_domain(n: int) -> ConvexDomain:
    """The standard simplex {x >= 0, sum x <= 1} in R^n."""
    return ConvexDomain(np.zeros(n), np.ones(n), constraints=(lambda x: float(np.sum(x) - 1.0),))


@dataclass
class SampledMapping:
    """Black-box mapping ``f: domain -> R^m``; must be deterministic."""

    evaluate: Callable
    domain: ConvexDomain
    name: str = "mapping"

    def __call__(self, x) -> np.ndarray:
        return np.atleast_1d(np.asarray(self.evaluate(np.asarray(x, dtype=np.float64)), dtype=np.float64))

    def images(self, X) -> np.ndarray:
        return np.array([self(x) for x in X])


class QuadraticMapping(SampledMapping):
    """``f_i(x) = 1/2 x^T Q_i x + c_i^T x`` with symmetric ``Q_i``."""

    def __init__(self, Q, c, domain: Optional[ConvexDomain] = None, name: str = "quadratic"):
        self.Q = np.asarray(Q, dtype=np.float64)
        self.c = np.asarray(c, dtype=np.float64)
        n = self.Q.shape[-1]
        if domain is None:
            domain = ConvexDomain(-np.ones(n) * 3, np.ones(n) * 3)
        super().__init__(self._evaluate, domain, name)

    def _evaluate(self, x):
        return 0.5 * np.einsum("i,kij,j->k", x, self.Q, x) + self.c @ x

    @property
    def modulus(self) -> float:
        """Smallest strong-convexity modulus over the components."""
        return float(min(np.linalg.eigvalsh(Qi)[0] for Qi in self.Q))

    def weighted_minimizer(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=np.float64)
        H = np.tensordot(w, self.Q, axes=1)
        g = w @ self.c
        return np.linalg.solve(H, -g)


def random_psd_quadratic(n: int, m: int, seed: int, mu: float = 0.5) -> QuadraticMapping:
    """Random strongly convex quadratics: ``Q_i = A_i^T A_i / n + mu I``."""
    rng = np.random.default_rng(seed)
    Q = []
    for _ in range(m):
        A = rng.standard_normal((n, n))
        Q.append(A.T @ A / n + mu * np.eye(n))
    c = rng.standard_normal((m, n)) * 2.0
    return QuadraticMapping(np.array(Q), c, name=f"psd-quadratic(n={n}, m={m}, seed={seed})")


@dataclass
class Violation:
    x: list
    y: list
    t: float
    coord: int
    lhs: float
    rhs: float


@dataclass
class ConvexityReport:
    checked_pairs: int
    violations: list
    seed: int
    tol: float
    modulus_alpha: Optional[float] = None

    @property
    def verdict(self) -> str:
        return "refuted" if self.violations else "consistent with"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "checked_pairs": self.checked_pairs,
            "n_violations": len(self.violations),
            "first_violation": self.violations[0].__dict__ if self.violations else None,
            "seed": self.seed,
            "tol": self.tol,
            "modulus_alpha": self.modulus_alpha,
        }


def _pairs_and_ts(f: SampledMapping, trials: int, ts, seed: int):
    rng = np.random.default_rng(seed)
    X = f.domain.sample(rng, trials)
    Y = f.domain.sample(rng, trials)
    base = list(DEFAULT_TS if ts is None else ts)
    for k in range(trials):
        extra = rng.uniform(0.0, 1.0, RANDOM_TS) if ts is None else []
        yield X[k], Y[k], base + list(extra)


def _check(f, trials, ts, seed, tol, alpha):
    violations = []
    for x, y, tlist in _pairs_and_ts(f, trials, ts, seed):
        fx, fy = f(x), f(y)
        gap = 0.0 if alpha is None else 0.5 * alpha * float(np.dot(x - y, x - y))
        for t in tlist:
            lhs = f(t * x + (1 - t) * y)
            rhs = t * fx + (1 - t) * fy - t * (1 - t) * gap
            for i in np.flatnonzero(lhs > rhs + tol):
                violations.append(Violation(x.tolist(), y.tolist(), float(t), int(i), float(lhs[i]), float(rhs[i])))
    return ConvexityReport(trials, violations, seed, tol, alpha)


def check_convex(f: SampledMapping, trials: int = 1000, ts: Optional[Sequence[float]] = None,
                 seed: int = 0, tol: float = TOL) -> ConvexityReport:
    """Sample ``f(tx + (1-t)y) <= t f(x) + (1-t) f(y)`` coordinatewise.

    With ``ts=None`` each pair uses t in {0.25, 0.5, 0.75} plus five uniform draws.
    """
    return _check(f, trials, ts, seed, tol, None)


def check_strongly_convex(f: SampledMapping, alpha: float, trials: int = 1000,
                          ts: Optional[Sequence[float]] = None, seed: int = 0,
                          tol: float = TOL) -> ConvexityReport:
    """Same sampling against the inequality with the ``alpha/2 t(1-t)|x-y|^2`` improvement."""
    if not alpha > 0:
        raise InvalidArgument(f"strong convexity modulus must be positive, got {alpha}")
    return _check(f, trials, ts, seed, tol, float(alpha))


def recheck_violation(f: SampledMapping, v: Violation, alpha: Optional[float] = None) -> float:
    """Recompute a witness from three evaluations; returns lhs - rhs."""
    x, y, t = np.asarray(v.x), np.asarray(v.y), v.t
    gap = 0.0 if alpha is None else 0.5 * alpha * float(np.dot(x - y, x - y))
    lhs = f(t * x + (1 - t) * y)[v.coord]
    rhs = t * f(x)[v.coord] + (1 - t) * f(y)[v.coord] - t * (1 - t) * gap
    return float(lhs - rhs)


def fdh_membership(images, z, slack: float = 0.0) -> bool:
    """Whether some image point is componentwise <= ``z`` (+ slack)."""
    images = as_point_set(images).points
    z = np.atleast_2d(np.asarray(z, dtype=np.float64))
    return bool(_backend.fdh_member(images, z, slack)[0])


def finite_fdh_is_convex(Y) -> bool:
    """The hull of a finite set is convex iff its efficient points share a single value."""
    Y = as_point_set(Y)
    if Y.n == 0:
        return True
    eff = Y.points[efficient_set(Y)]
    return bool((eff == eff[0]).all())


@dataclass
class FDHReport:
    pairs: int
    violations: list
    seed: int
    slack: float

    @property
    def rate(self) -> float:
        return len(self.violations) / self.pairs if self.pairs else 0.0

    @property
    def verdict(self) -> str:
        return "refuted" if self.violations else "consistent with"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "pairs": self.pairs,
            "violation_rate": self.rate,
            "first_violation": self.violations[0] if self.violations else None,
            "seed": self.seed,
            "slack": self.slack,
        }


def check_fdh_convexity_sampled(f: SampledMapping, samples: int = 10_000, pairs: int = 2000,
                                seed: int = 0, slack: float = FDH_SLACK) -> FDHReport:
    """Test convex combinations of hull points for hull membership.

    Each trial takes two sampled images, lifts them by random nonnegative
    offsets (zero half of the time), forms a random convex combination and asks
    whether some image is below it. The image pool is the sample plus the image
    of the same combination of the two preimages whenever that lies in the
    domain.
    """
    rng = np.random.default_rng(seed)
    X = f.domain.sample(rng, samples)
    F = f.images(X)
    spread = np.maximum(F.max(axis=0) - F.min(axis=0), 1e-12)
    queries = []
    extra = []
    meta = []
    for _ in range(pairs):
        i, j = rng.integers(0, samples, size=2)
        t = rng.uniform(0.0, 1.0)
        z = [rng.exponential(0.1, F.shape[1]) * spread * rng.integers(0, 2) for _ in range(2)]
        q = t * (F[i] + z[0]) + (1 - t) * (F[j] + z[1])
        xm = t * X[i] + (1 - t) * X[j]
        queries.append(q)
        extra.append(f(xm) if f.domain.contains(xm) else None)
        meta.append((int(i), int(j), float(t)))
    queries = np.array(queries)
    hit = _backend.fdh_member(F, queries, slack)
    violations = []
    for k in np.flatnonzero(~hit):
        e = extra[k]
        if e is not None and (e <= queries[k] + slack).all():
            continue
        i, j, t = meta[k]
        violations.append({"x": X[i].tolist(), "x2": X[j].tolist(), "t": t, "point": queries[k].tolist()})
    return FDHReport(pairs, violations, seed, slack)


def polygon_domain(P: Polygon2) -> ConvexDomain:
    """Box around ``P`` restricted to ``P`` (not convex in general; used to probe hulls)."""
    V = np.array([[float(c) for c in v] for v in P.vertices])
    path_x, path_y = V[:, 0], V[:, 1]

    def outside(x):
        inside = False
        px, py = x
        n = len(path_x)
        for k in range(n):
            ax, ay = path_x[k - 1], path_y[k - 1]
            bx, by = path_x[k], path_y[k]
            if (ay > py) != (by > py):
                if px < ax + (py - ay) * (bx - ax) / (by - ay):
                    inside = not inside
        return 0.0 if inside else 1.0

    return ConvexDomain(V.min(axis=0), V.max(axis=0), constraints=(outside,))


def identity_on_polygon(P: Polygon2) -> SampledMapping:
    return SampledMapping(lambda x: x, polygon_domain(P), name="identity on polygon")


def check_injectivity_on_efficient(S: SolutionSet) -> bool:
    """No two distinct efficient solutions share exactly the same image."""
    ids = set(efficient_solutions(S))
    rows = [tuple(S.images[k]) for k, sid in enumerate(S.ids) if sid in ids]
    return len(rows) == len(set(rows))


def simplex_weights(m: int, count: int, seed: int = 0) -> np.ndarray:
    """``count`` weight vectors on the unit simplex, vertices included."""
    if m == 2:
        w = np.linspace(0.0, 1.0, count)
        return np.column_stack([w, 1 - w])
    rng = np.random.default_rng(seed)
    W = np.vstack([np.eye(m), rng.dirichlet(np.ones(m), size=max(0, count - m))])
    return W[:count]


@dataclass
class CorollaryReport:
    kind: str
    seed: int
    n_solutions: int
    alpha: Optional[bool] = None
    beta: Optional[bool] = None
    we: list = field(default_factory=list)
    e: list = field(default_factory=list)
    se: list = field(default_factory=list)
    injective: Optional[bool] = None

    @property
    def agrees(self) -> bool:
        if self.kind == "strongly-convex":
            return sorted(self.we) == sorted(self.e) == sorted(self.se) and bool(self.injective)
        return self.alpha == self.beta

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["agrees"] = self.agrees
        return d


KINDS = ("convex-image", "convex-map", "constrained", "strongly-convex")


def corollary_harness(f: SampledMapping, kind: str, weights: int = 50, samples: int = 400,
                      seed: int = 0, grid: Optional[int] = 9) -> CorollaryReport:
    """Check a corollary's prediction on a finite instance built from ``f``.

    ``strongly-convex`` solves a weight sweep (``f`` must offer
    ``weighted_minimizer``) and expects WE = E = SE. The other kinds sample the
    domain, snapping samples to a ``grid``-point lattice per axis so that ties
    occur, and expect (alpha) and (beta) to agree.
    """
    if kind not in KINDS:
        raise InvalidArgument(f"unknown kind {kind!r}; choose from {KINDS}")
    if kind == "strongly-convex":
        if not hasattr(f, "weighted_minimizer"):
            raise InvalidArgument("strongly-convex harness needs a mapping with weighted_minimizer")
        m = f(f.domain.lower).size
        W = simplex_weights(m, weights, seed)
        sols = SolutionSet((k, f(f.weighted_minimizer(w))) for k, w in enumerate(W))
        return CorollaryReport(
            kind, seed, len(sols),
            we=weakly_efficient_solutions(sols), e=efficient_solutions(sols),
            se=strictly_efficient(sols), injective=check_injectivity_on_efficient(sols),
        )
    rng = np.random.default_rng(seed)
    X = f.domain.sample(rng, samples)
    if grid:
        lo, hi = f.domain.lower, f.domain.upper
        X = lo + np.round((X - lo) / (hi - lo) * (grid - 1)) / (grid - 1) * (hi - lo)
        X = np.array([x for x in X if f.domain.contains(x)])
    Fimg = PointSet(f.images(X))
    alpha, _ = condition_alpha(Fimg)
    beta, _ = condition_beta(Fimg)
    return CorollaryReport(kind, seed, Fimg.n, alpha=alpha, beta=beta)


# Polygon generators -------------------------------------------------------------

def _hull(points: list) -> list:
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and (
                (out[-1][0] - out[-2][0]) * (p[1] - out[-2][1]) - (out[-1][1] - out[-2][1]) * (p[0] - out[-2][0])
            ) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def random_convex_polygon(rng: np.random.Generator, k: int = 8, lo: int = 0, hi: int = 10) -> Polygon2:
    """Convex hull of ``k`` random lattice points (redrawn until nondegenerate)."""
    while True:
        pts = [tuple(int(v) for v in rng.integers(lo, hi + 1, size=2)) for _ in range(k)]
        hull = _hull(pts)
        if len(hull) >= 3:
            return Polygon2(hull)


def random_simple_polygon(rng: np.random.Generator, k: int = 7, lo: int = 0, hi: int = 10) -> Polygon2:
    """Star-shaped polygon: random lattice points sorted by angle around their centroid."""
    while True:
        pts = list({tuple(int(v) for v in rng.integers(lo, hi + 1, size=2)) for _ in range(k)})
        if len(pts) < 3:
            continue
        cx = sum(Fraction(p[0]) for p in pts) / len(pts)
        cy = sum(Fraction(p[1]) for p in pts) / len(pts)
        angles = [math.atan2(float(p[1] - cy), float(p[0] - cx)) for p in pts]
        if len(set(angles)) < len(angles):
            continue
        ordered = [p for _, p in sorted(zip(angles, pts))]
        try:
            return Polygon2(ordered)
        except DegeneratePolygon:
            continue


def instance(name: str, seed: int = 0):
    """Built-in instances by name: ``example-3.1`` .. ``example-3.4``,
    ``random-polygon``, ``convex-polygon`` and ``psd-quadratic``."""
    rng = np.random.default_rng(seed)
    if name.startswith("example-"):
        return example_polygon(name.split("-", 1)[1])
    if name == "random-polygon":
        return random_simple_polygon(rng)
    if name == "convex-polygon":
        return random_convex_polygon(rng)
    if name == "psd-quadratic":
        return random_psd_quadratic(3, 2, seed)
    raise InvalidArgument(f"unknown instance {name!r}")
