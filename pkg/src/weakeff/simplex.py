"""Small dense two-phase simplex with Bland's rule.

Solves ``max c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0``. Meant for
the handful of variables a weight certificate needs, not for large models.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: Optional[np.ndarray]
    value: Optional[float]
    iterations: int


class _Tableau:
    def __init__(self, T: np.ndarray, basis: list, tol: float):
        self.T = T  # rows: constraints, last column: rhs
        self.basis = basis
        self.tol = tol
        self.iterations = 0

    def pivot(self, r: int, j: int) -> None:
        T = self.T
        T[r] /= T[r, j]
        for k in range(T.shape[0]):
            if k != r and T[k, j] != 0.0:
                T[k] -= T[k, j] * T[r]
        self.basis[r] = j
        self.iterations += 1

    def reduced_costs(self, cost: np.ndarray) -> np.ndarray:
        cb = cost[self.basis]
        rc = cost - cb @ self.T[:, :-1]
        return rc

    def run(self, cost: np.ndarray, allowed: np.ndarray, max_iter: int) -> str:
        tol = self.tol
        while True:
            if self.iterations > max_iter:
                raise RuntimeError(f"simplex exceeded {max_iter} pivots")
            rc = self.reduced_costs(cost)
            entering = np.flatnonzero((rc > tol) & allowed)
            if entering.size == 0:
                return "optimal"
            j = int(entering[0])
            col = self.T[:, j]
            rows = np.flatnonzero(col > tol)
            if rows.size == 0:
                return "unbounded"
            ratios = self.T[rows, -1] / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + tol * max(1.0, abs(best))]
            r = int(min(ties, key=lambda k: self.basis[k]))
            self.pivot(r, j)


def linprog_max(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, tol=1e-10, max_iter=50_000) -> LPResult:
    c = np.asarray(c, dtype=np.float64)
    n = c.size
    A_ub = np.zeros((0, n)) if A_ub is None else np.atleast_2d(np.asarray(A_ub, dtype=np.float64))
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=np.float64).ravel()
    A_eq = np.zeros((0, n)) if A_eq is None else np.atleast_2d(np.asarray(A_eq, dtype=np.float64))
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=np.float64).ravel()
    m_ub, m_eq = A_ub.shape[0], A_eq.shape[0]
    R = m_ub + m_eq

    A = np.vstack([A_ub, A_eq])
    b = np.concatenate([b_ub, b_eq])
    S = np.vstack([np.eye(m_ub), np.zeros((m_eq, m_ub))])
    flip = b < 0
    A[flip] *= -1
    S[flip] *= -1
    b[flip] *= -1

    needs_art = [r for r in range(R) if r >= m_ub or flip[r]]
    n_art = len(needs_art)
    art = np.zeros((R, n_art))
    for k, r in enumerate(needs_art):
        art[r, k] = 1.0
    T = np.hstack([A, S, art, b[:, None]])
    n_cols = n + m_ub + n_art
    basis = []
    art_of_row = {r: n + m_ub + k for k, r in enumerate(needs_art)}
    for r in range(R):
        basis.append(art_of_row[r] if r in art_of_row else n + r)
    tab = _Tableau(T, basis, tol)
    is_art = np.zeros(n_cols, dtype=bool)
    is_art[n + m_ub:] = True

    if n_art:
        cost1 = np.where(is_art, -1.0, 0.0)
        tab.run(cost1, np.ones(n_cols, dtype=bool), max_iter)
        leftover = -float(cost1[tab.basis] @ tab.T[:, -1])  # sum of artificials still basic
        if leftover > max(tol, 1e-9) * max(1.0, np.abs(b).max(initial=0.0)):
            return LPResult("infeasible", None, None, tab.iterations)
        # pivot remaining zero-level artificials out; drop redundant rows
        r = 0
        while r < tab.T.shape[0]:
            if is_art[tab.basis[r]]:
                row = tab.T[r, :n + m_ub]
                cand = np.flatnonzero(np.abs(row) > tol)
                if cand.size:
                    tab.pivot(r, int(cand[0]))
                else:
                    tab.T = np.delete(tab.T, r, axis=0)
                    del tab.basis[r]
                    continue
            r += 1

    cost2 = np.concatenate([c, np.zeros(m_ub + n_art)])
    status = tab.run(cost2, ~is_art, max_iter)
    if status == "unbounded":
        return LPResult("unbounded", None, None, tab.iterations)
    x = np.zeros(n_cols)
    x[tab.basis] = tab.T[:, -1]
    return LPResult("optimal", x[:n], float(c @ x[:n]), tab.iterations)
