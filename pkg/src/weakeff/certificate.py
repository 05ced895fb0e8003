"""Separating-weight certificates for weakly efficient points.

For a weakly efficient ``y*`` of a set whose free disposal hull is convex there
are weights ``a >= 0, a != 0`` with ``<a, y - y*> >= 0`` on the whole set; then
``y*`` is efficient with respect to the coordinates where ``a`` is positive.
We look for such ``a`` by solving

    max t   s.t.   <a, y - y*> >= t  for every y,   sum(a) = 1,   a >= 0

on the vertex list (a linear functional is extremal at vertices, so this also
certifies the polytope they span). There is no offset variable: the separating
hyperplane passes through ``y*``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .effset import PointSet, as_point_set, is_efficient_point
from .order import IndexSet, InvalidArgument, as_point
from .simplex import linprog_max

SUPPORT_TOL = 1e-9
MARGIN_TOL = 1e-9


@dataclass(frozen=True)
class WeightCertificate:
    weights: tuple
    support: Optional[IndexSet]
    margin: float
    valid: bool
    verified: bool

    @property
    def status(self) -> str:
        return "certified" if self.valid and self.verified else "no-certificate"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "weights": list(self.weights),
            "support": list(self.support.members) if self.support else None,
            "margin": self.margin,
            "valid": self.valid,
            "verified": self.verified,
        }


def support_index_set(a, support_tol: float = SUPPORT_TOL) -> IndexSet:
    """1-based indices where the weight exceeds ``support_tol``."""
    a = np.asarray(a, dtype=np.float64)
    if (a < -support_tol).any():
        raise InvalidArgument(f"invalid weights: negative entries in {a.tolist()}")
    idx = np.flatnonzero(a > support_tol)
    if idx.size == 0:
        raise InvalidArgument(f"invalid weights: nothing above {support_tol}")
    return IndexSet(tuple(int(i) + 1 for i in idx))


def _as_points(Y) -> PointSet:
    if hasattr(Y, "vertices"):
        return PointSet([[float(c) for c in v] for v in Y.vertices])
    return as_point_set(Y)


def _solve_epigraph(D: np.ndarray) -> np.ndarray:
    """Optimal weights for max_a min_j <a, D_j> over the simplex, by constraint generation."""
    n, m = D.shape
    active = set(np.argmin(D, axis=0).tolist())
    active.add(int(np.argmin(D.sum(axis=1))))
    # variables: a_1..a_m, t+, t-
    c = np.zeros(m + 2)
    c[m], c[m + 1] = 1.0, -1.0
    A_eq = np.concatenate([np.ones(m), [0.0, 0.0]])[None, :]
    while True:
        rows = sorted(active)
        A_ub = np.hstack([-D[rows], np.ones((len(rows), 1)), -np.ones((len(rows), 1))])
        res = linprog_max(c, A_ub, np.zeros(len(rows)), A_eq, [1.0])
        if res.status != "optimal":
            raise RuntimeError(f"certificate LP ended {res.status}")
        a = res.x[:m]
        t = res.x[m] - res.x[m + 1]
        margins = D @ a
        worst = np.argsort(margins)[: m + 1]
        new = [int(j) for j in worst if margins[j] < t - 1e-12 and int(j) not in active]
        if not new:
            return a
        active.update(new)


def find_certificate(Y, y_star, support_tol: float = SUPPORT_TOL, margin_tol: float = MARGIN_TOL) -> WeightCertificate:
    """Best separating weights for ``y_star`` against ``Y`` (points or a polygon).

    A negative optimum is reported as ``status == "no-certificate"``, which is
    the expected outcome on some nonconvex instances, not an error.
    """
    Y = _as_points(Y)
    y_star = np.asarray(as_point(y_star), dtype=np.float64)
    if Y.n == 0:
        raise InvalidArgument("cannot certify against an empty set")
    if Y.dim != y_star.size:
        raise InvalidArgument(f"y* has dimension {y_star.size}, set has {Y.dim}")
    D = Y.points - y_star
    m = Y.dim
    if not D.any():
        a = np.full(m, 1.0 / m)
    else:
        a = np.clip(_solve_epigraph(D), 0.0, None)
        a /= a.sum()
    margin = float((D @ a).min())
    valid = margin >= -margin_tol
    cert = WeightCertificate(
        weights=tuple(float(v) for v in a),
        support=support_index_set(a, support_tol),
        margin=margin,
        valid=valid,
        verified=False,
    )
    if valid:
        cert = WeightCertificate(**{**cert.__dict__, "verified": verify_certificate(Y, y_star, cert, margin_tol)})
    return cert


def verify_certificate(Y, y_star, cert, tol: float = MARGIN_TOL) -> bool:
    """Recheck a certificate from scratch.

    (i) ``<a, y - y*> >= -tol`` on every point; (ii) ``y*`` is efficient for
    the support index set: no point of ``Y`` is ``lneq``-below it there
    (exact dominance).
    """
    Y = _as_points(Y)
    y_star = np.asarray(as_point(y_star), dtype=np.float64)
    weights = np.asarray(cert.weights if hasattr(cert, "weights") else cert, dtype=np.float64)
    if (weights < 0).any() or weights.sum() <= 0:
        return False
    D = Y.points - y_star
    if (D @ weights).min() < -tol:
        return False
    support = getattr(cert, "support", None) or support_index_set(weights, SUPPORT_TOL)
    return is_efficient_point(Y, y_star, support)
