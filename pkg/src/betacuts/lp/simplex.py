"""Dense revised primal simplex for ``min c.x  s.t.  A x >= b,  lo <= x <= hi``.

Bounded variables are handled directly (nonbasic at lower or upper bound,
bound flips in the ratio test). Phase 1 minimizes the sum of artificials.
Dantzig pricing; Bland's rule takes over after a run of degenerate pivots.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import IterationLimit, NumericalFailure


@dataclass
class SimplexResult:
    status: str
    x: np.ndarray
    objective: float
    iterations: int


class _Solver:
    def __init__(self, c, A, b, lo, hi, tol, max_iter, refactor_every, stall_limit):
        m, n = A.shape
        self.m, self.n = m, n
        self.tol = tol
        self.max_iter = max_iter
        self.refactor_every = refactor_every
        self.stall_limit = stall_limit
        art_rows = np.flatnonzero(b > 0)
        p = len(art_rows)
        # columns: x (n) | surplus s (m) | artificials (p)
        M = np.zeros((m, n + m + p))
        M[:, :n] = A
        M[:, n:n + m] = -np.eye(m)
        M[art_rows, n + m + np.arange(p)] = 1.0
        self.M = M
        self.b = b.astype(float)
        self.lo = np.concatenate([lo, np.zeros(m), np.zeros(p)])
        self.hi = np.concatenate([hi, np.full(m, np.inf), np.full(p, np.inf)])
        self.c_orig = np.concatenate([c, np.zeros(m + p)])
        self.art = n + m + np.arange(p)
        basis = np.arange(n, n + m)
        basis[art_rows] = self.art
        self.basis = basis
        self.at_upper = np.zeros(n + m + p, dtype=bool)
        self.iterations = 0
        self._refactor()

    def _refactor(self):
        B = self.M[:, self.basis]
        try:
            self.Binv = np.linalg.inv(B)
        except np.linalg.LinAlgError:
            raise NumericalFailure(f"singular basis (cond={np.linalg.cond(B):.3g})") from None
        self.since_refactor = 0

    def nonbasic_values(self):
        x = np.where(self.at_upper, self.hi, self.lo)
        x[self.basis] = 0.0
        return x

    def primal(self):
        x = self.nonbasic_values()
        rhs = self.b - self.M @ x
        x[self.basis] = self.Binv @ rhs
        return x

    def run(self, cost):
        tol = self.tol
        stall = 0
        last_obj = np.inf
        nvar = self.M.shape[1]
        is_basic = np.zeros(nvar, dtype=bool)
        while True:
            if self.iterations >= self.max_iter:
                raise IterationLimit(f"simplex stopped after {self.iterations} iterations")
            x = self.primal()
            obj = float(cost @ x)
            if obj < last_obj - 1e-12:
                stall = 0
                last_obj = obj
            else:
                stall += 1
            bland = stall > self.stall_limit
            pi = cost[self.basis] @ self.Binv
            d = cost - pi @ self.M
            is_basic[:] = False
            is_basic[self.basis] = True
            movable = (self.hi > self.lo) & ~is_basic
            cand_lo = movable & ~self.at_upper & (d < -tol)
            cand_hi = movable & self.at_upper & (d > tol)
            cand = np.flatnonzero(cand_lo | cand_hi)
            if cand.size == 0:
                return x
            q = int(cand[0]) if bland else int(cand[np.argmax(np.abs(d[cand]))])
            direction = -1.0 if self.at_upper[q] else 1.0
            alpha = self.Binv @ self.M[:, q]
            xb = x[self.basis]
            lob, hib = self.lo[self.basis], self.hi[self.basis]
            step = direction * alpha
            ratios = np.full(self.m, np.inf)
            dec = step > tol
            inc = step < -tol
            ratios[dec] = (xb[dec] - lob[dec]) / step[dec]
            fin = inc & np.isfinite(hib)
            ratios[fin] = (hib[fin] - xb[fin]) / (-step[fin])
            ratios = np.maximum(ratios, 0.0)
            t_flip = self.hi[q] - self.lo[q]
            t_min = ratios.min() if self.m else np.inf
            self.iterations += 1
            if t_flip <= t_min:
                if not np.isfinite(t_flip):
                    raise NumericalFailure("unbounded direction in a bounded problem")
                self.at_upper[q] = not self.at_upper[q]
                continue
            ties = np.flatnonzero(ratios <= t_min + 1e-12)
            if bland:
                r = int(ties[np.argmin(self.basis[ties])])
            else:
                r = int(ties[np.argmax(np.abs(alpha[ties]))])
            leaving = self.basis[r]
            self.at_upper[leaving] = bool(step[r] < 0)
            self.at_upper[q] = False
            self.basis[r] = q
            piv = alpha[r]
            if abs(piv) < 1e-10:
                raise NumericalFailure(f"pivot {piv:.3g} below zero-pivot tolerance")
            # eta update of the basis inverse
            row = self.Binv[r] / piv
            self.Binv -= np.outer(alpha, row)
            self.Binv[r] = row
            self.since_refactor += 1
            if self.since_refactor >= self.refactor_every:
                self._refactor()


def simplex_solve(c, A, b, lo, hi, *, tol=1e-9, feasibility_tol=1e-7, max_iter=50_000,
                  refactor_every=100, stall_limit=50) -> SimplexResult:
    c = np.asarray(c, float)
    A = np.asarray(A, float).reshape(-1, len(c))
    b = np.asarray(b, float)
    lo = np.asarray(lo, float)
    hi = np.asarray(hi, float)
    solver = _Solver(c, A, b, lo, hi, tol, max_iter, refactor_every, stall_limit)
    n = len(c)
    if len(solver.art):
        phase1 = np.zeros(solver.M.shape[1])
        phase1[solver.art] = 1.0
        x = solver.run(phase1)
        if x[solver.art].sum() > feasibility_tol:
            return SimplexResult("infeasible", x[:n], np.nan, solver.iterations)
        solver.hi[solver.art] = 0.0
    x = solver.run(solver.c_orig)
    return SimplexResult("optimal", x[:n], float(c @ x[:n]), solver.iterations)
