"""Bi-objective lasso with an epsilon-coupled l1 term.

Objectives: ``f1 = |X theta - y|^2 / (2 m)``, ``f2 = |theta|_1`` and the
modified pair ``g1 = f1 + eps f2``, ``g2 = (1 + eps) f2``. A weight ``w`` in
(0, 1] turns ``w g1 + (1 - w) g2`` into a plain lasso with penalty
``lambda_eff = eps + (1 - w) / w * (1 + eps)``.

Solutions coming out of an iterative solver are compared with a tolerance;
this is the only place in the package where dominance is fuzzy.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .effset import PointSet, efficient_set, weakly_efficient_set
from .order import InvalidArgument

KKT_TOL = 1e-8
MAX_ITER = 50_000
DOMINANCE_TOL = 1e-6


class SolverError(RuntimeError):
    def __init__(self, message: str, best_residual: float, theta: np.ndarray):
        super().__init__(message)
        self.best_residual = best_residual
        self.theta = theta


@dataclass
class LassoProblem:
    X: np.ndarray
    y: np.ndarray
    epsilon: float
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.X = np.atleast_2d(np.asarray(self.X, dtype=np.float64))
        self.y = np.asarray(self.y, dtype=np.float64).ravel()
        if self.X.shape[0] != self.y.size:
            raise InvalidArgument(f"X has {self.X.shape[0]} rows but y has {self.y.size} entries")
        if not (np.isfinite(self.X).all() and np.isfinite(self.y).all()):
            raise InvalidArgument("X and y must be finite")
        if self.epsilon < 0:
            raise InvalidArgument("epsilon must be nonnegative")

    @property
    def rows(self) -> int:
        return self.X.shape[0]

    @property
    def cols(self) -> int:
        return self.X.shape[1]

    def gradient(self, theta: np.ndarray) -> np.ndarray:
        return self.X.T @ (self.X @ theta - self.y) / self.rows


def synthetic(rows: int = 50, cols: int = 20, sparsity: int = 5, sigma: float = 0.1,
              epsilon: float = 1e-3, seed: int = 0) -> LassoProblem:
    """Gaussian design, ``sparsity``-sparse ground truth, Gaussian noise of scale ``sigma``."""
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((rows, cols))
    truth = np.zeros(cols)
    support = rng.choice(cols, size=min(sparsity, cols), replace=False)
    truth[support] = rng.standard_normal(support.size) * 2.0
    y = X @ truth + sigma * rng.standard_normal(rows)
    prov = {"generator": "gaussian", "rows": rows, "cols": cols, "sparsity": sparsity,
            "sigma": sigma, "seed": seed}
    return LassoProblem(X, y, epsilon, prov)


def objectives(p: LassoProblem, theta) -> tuple:
    """``(f1, f2, g1, g2)`` for the plain and epsilon-modified objectives."""
    theta = np.asarray(theta, dtype=np.float64).ravel()
    if theta.size != p.cols:
        raise InvalidArgument(f"theta has {theta.size} entries, X has {p.cols} columns")
    r = p.X @ theta - p.y
    f1 = float(r @ r) / (2 * p.rows)
    f2 = float(np.abs(theta).sum())
    return f1, f2, f1 + p.epsilon * f2, (1 + p.epsilon) * f2


def soft_threshold(v, tau):
    if np.any(np.asarray(tau) < 0):
        raise InvalidArgument("threshold must be nonnegative")
    return np.sign(v) * np.maximum(np.abs(v) - tau, 0.0)


def lambda_eff(w: float, epsilon: float) -> float:
    if not 0 < w <= 1:
        raise InvalidArgument(f"weight must lie in (0, 1], got {w}")
    return epsilon + (1 - w) / w * (1 + epsilon)


def weight_for(lam: float, epsilon: float) -> float:
    """Inverse of ``lambda_eff``."""
    return (1 + epsilon) / (lam + 1)


def kkt_residual(p: LassoProblem, theta: np.ndarray, lam: float) -> float:
    """Largest violation of the zero-subgradient condition."""
    g = p.gradient(theta)
    nz = theta != 0
    res_nz = np.abs(g[nz] + lam * np.sign(theta[nz]))
    res_z = np.maximum(np.abs(g[~nz]) - lam, 0.0)
    return float(max(res_nz.max(initial=0.0), res_z.max(initial=0.0)))


def lipschitz(p: LassoProblem, iters: int = 100, seed: int = 0) -> float:
    """Largest eigenvalue of ``X^T X / m`` by power iteration (with 1% headroom)."""
    if not p.X.any():
        return 1.0
    v = np.random.default_rng(seed).standard_normal(p.cols)
    est = 0.0
    for _ in range(iters):
        u = p.X.T @ (p.X @ v)
        nrm = np.linalg.norm(u)
        if nrm == 0:
            break
        new = nrm / np.linalg.norm(v)
        v = u / nrm
        if abs(new - est) <= 1e-10 * new:
            est = new
            break
        est = new
    return 1.01 * est / p.rows


def _polish(p: LassoProblem, theta: np.ndarray, lam: float) -> Optional[np.ndarray]:
    # exact solve on the detected support with signs fixed; kept only if it stays consistent
    S = np.flatnonzero(theta)
    if S.size == 0:
        return None
    XS = p.X[:, S]
    if np.linalg.matrix_rank(XS) < S.size:
        return None
    s = np.sign(theta[S])
    rhs = XS.T @ p.y - p.rows * lam * s
    try:
        sol = np.linalg.solve(XS.T @ XS, rhs)
    except np.linalg.LinAlgError:
        return None
    if (np.sign(sol) != s).any():
        return None
    out = np.zeros_like(theta)
    out[S] = sol
    return out


def solve_lasso(p: LassoProblem, lam: float, theta0=None, tol: float = KKT_TOL,
                max_iter: int = MAX_ITER, polish: bool = True) -> tuple:
    """Minimize ``f1 + lam |theta|_1`` by FISTA with adaptive restart.

    Returns ``(theta, residual)``; raises SolverError if the KKT residual is
    still above ``tol`` after ``max_iter`` iterations.
    """
    L = lipschitz(p)
    step = 1.0 / L
    theta = np.zeros(p.cols) if theta0 is None else np.asarray(theta0, dtype=np.float64).copy()
    z = theta.copy()
    tk = 1.0
    best, best_res = theta.copy(), kkt_residual(p, theta, lam)
    if best_res <= tol:
        return theta, best_res
    obj = lambda th: objectives(p, th)[0] + lam * np.abs(th).sum()  # noqa: E731
    f_prev = obj(theta)
    for it in range(1, max_iter + 1):
        new = soft_threshold(z - step * p.gradient(z), step * lam)
        f_new = obj(new)
        if f_new > f_prev:
            # restart: drop momentum and take a plain proximal step from theta
            tk = 1.0
            new = soft_threshold(theta - step * p.gradient(theta), step * lam)
            f_new = obj(new)
            z = new.copy()
        else:
            tn = (1 + np.sqrt(1 + 4 * tk * tk)) / 2
            z = new + (tk - 1) / tn * (new - theta)
            tk = tn
        theta, f_prev = new, f_new
        if it % 10 == 0 or it == max_iter:
            res = kkt_residual(p, theta, lam)
            if res < best_res:
                best, best_res = theta.copy(), res
            if res <= tol:
                return theta, res
            if polish and it % 200 == 0:
                cand = _polish(p, theta, lam)
                if cand is not None:
                    r2 = kkt_residual(p, cand, lam)
                    if r2 <= tol:
                        return cand, r2
    raise SolverError(f"no convergence in {max_iter} iterations (best residual {best_res:.3g})", best_res, best)


def solve_scalarized(p: LassoProblem, w: float, **kw) -> tuple:
    """Minimizer of ``w g1 + (1 - w) g2`` and its KKT residual."""
    return solve_lasso(p, lambda_eff(w, p.epsilon), **kw)


@dataclass
class SweepEntry:
    weight: float
    lambda_eff: float
    theta: Optional[np.ndarray]
    objectives: Optional[tuple]
    kkt_residual: float
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "lambda_eff": self.lambda_eff,
            "theta": None if self.theta is None else self.theta.tolist(),
            "objectives": None if self.objectives is None else list(self.objectives),
            "kkt_residual": self.kkt_residual,
            "error": self.error,
        }


@dataclass
class SweepResult:
    epsilon: float
    entries: list
    endpoint: dict

    def accepted(self) -> list:
        return [e for e in self.entries if e.ok]

    def to_dict(self) -> dict:
        return {"epsilon": self.epsilon, "entries": [e.to_dict() for e in self.entries], "endpoint": self.endpoint}


def default_weights(p: LassoProblem, count: int = 20) -> list:
    """Weights whose penalties are log-spaced from ``lambda_max`` down to 1e-3 of it."""
    lam_max = float(np.abs(p.X.T @ p.y).max()) / p.rows
    lam_max = max(lam_max, p.epsilon * 1.001, 1e-12)
    lams = np.geomspace(lam_max, max(lam_max * 1e-3, p.epsilon * 1.001), count)
    ws = sorted({min(1.0, weight_for(lam, p.epsilon)) for lam in lams})
    return ws


def pareto_sweep(p: LassoProblem, weights: Optional[Sequence[float]] = None, **kw) -> SweepResult:
    """Solve every scalarization; failures become entries with ``error`` set.

    Entries are in increasing weight order. The ``w = 0`` end (``theta = 0``)
    is reported separately as ``endpoint``.
    """
    ws = default_weights(p) if weights is None else sorted(float(w) for w in weights)
    entries = []
    warm = None
    for w in ws:
        lam = lambda_eff(w, p.epsilon)
        try:
            theta, res = solve_lasso(p, lam, theta0=warm, **kw)
            warm = theta
            o = objectives(p, theta)
            entries.append(SweepEntry(w, lam, theta, (o[2], o[3]), res))
        except SolverError as exc:
            entries.append(SweepEntry(w, lam, exc.theta, None, exc.best_residual, str(exc)))
    zero = objectives(p, np.zeros(p.cols))
    return SweepResult(p.epsilon, entries, {"weight": 0.0, "theta": "zero", "objectives": [zero[2], zero[3]]})


def _fuzzy_masks(F: np.ndarray, tol: float):
    n = F.shape[0]
    eff = np.ones(n, dtype=bool)
    weak = np.ones(n, dtype=bool)
    for j in range(n):
        d = F[j] - F  # positive where the other entry is better
        strict = (d > tol).all(axis=1)
        dom = (d >= -tol).all(axis=1) & (d > tol).any(axis=1)
        weak[j] = not strict.any()
        eff[j] = not dom.any()
    return eff, weak


@dataclass
class FrontCheck:
    n_entries: int
    weak_only: list
    tol: float

    @property
    def holds(self) -> bool:
        return not self.weak_only

    def to_dict(self) -> dict:
        return {"n_entries": self.n_entries, "weak_only": self.weak_only, "tol": self.tol, "holds": self.holds}


def check_front_efficiency(sr, tol: float = DOMINANCE_TOL) -> FrontCheck:
    """Weakly efficient but not efficient entries among the computed objective vectors.

    Accepts a SweepResult (failed entries are skipped) or a plain list of
    objective pairs. Reported positions index the list that was checked.
    """
    if isinstance(sr, SweepResult):
        F = np.array([e.objectives for e in sr.accepted()], dtype=np.float64).reshape(-1, 2)
    else:
        F = np.asarray(sr, dtype=np.float64).reshape(len(sr), -1)
    if F.shape[0] == 0:
        return FrontCheck(0, [], tol)
    eff, weak = _fuzzy_masks(F, tol)
    return FrontCheck(F.shape[0], np.flatnonzero(weak & ~eff).tolist(), tol)


def zero_matrix_counterexample(n: int = 3, sample: int = 20, epsilon: float = 0.0,
                               rows: int = 4, seed: int = 0, y=None, thetas=None) -> dict:
    """Sample thetas (with 0 among them) for X = 0 and compare WM with M on their images.

    With ``epsilon = 0`` the first objective is constant, so all samples are
    weakly efficient and only theta = 0 is efficient. Default samples are
    ``+-k e_i`` for k = 1, 2, ..., cycling through the axes.
    """
    rng = np.random.default_rng(seed)
    y = rng.standard_normal(rows) if y is None else np.asarray(y, dtype=np.float64)
    p = LassoProblem(np.zeros((y.size, n)), y, epsilon)
    if thetas is None:
        thetas = [np.zeros(n)]
        for k in range(1, sample):
            e = np.zeros(n)
            e[(k - 1) % n] = k * rng.choice([-1.0, 1.0])
            thetas.append(e)
    thetas = [np.asarray(t, dtype=np.float64) for t in thetas]
    imgs = PointSet([objectives(p, t)[2:] for t in thetas])
    wm = weakly_efficient_set(imgs)
    m = efficient_set(imgs)
    return {
        "epsilon": epsilon,
        "sample_size": imgs.n,
        "thetas": [t.tolist() for t in thetas],
        "images": imgs.points.tolist(),
        "WM": wm,
        "M": m,
        "weak_only": sorted(set(wm) - set(m)),
    }


def duplicated_column_check(X=((1.0, 1.0),), y=(2.0,), epsilon: float = 0.5, starts=None,
                            tol: float = 1e-6, seed: int = 0) -> dict:
    """Minimize ``g1`` from several starts and compare residual norms and l1 norms."""
    p = LassoProblem(np.asarray(X, dtype=np.float64), np.asarray(y, dtype=np.float64), epsilon)
    if starts is None:
        rng = np.random.default_rng(seed)
        starts = [np.zeros(p.cols)] + [rng.uniform(-2, 3, p.cols) for _ in range(5)]
    results = []
    for s in starts:
        theta, res = solve_lasso(p, epsilon, theta0=s, polish=False)
        r = p.X @ theta - p.y
        results.append({"start": np.asarray(s, dtype=float).tolist(), "theta": theta.tolist(),
                        "sq_residual": float(r @ r), "l1": float(np.abs(theta).sum()), "kkt": res})
    sq = [r["sq_residual"] for r in results]
    l1 = [r["l1"] for r in results]
    spread = max(max(sq) - min(sq), max(l1) - min(l1))
    return {"runs": results, "spread": spread, "agree": spread <= tol, "tol": tol}
