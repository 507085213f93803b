"""LP models over ``z`` in ``[0, 1]^(V u E)`` with rows ``a.z >= rhs``."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import highspy
import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from ..cuts import Cut, LinearForm
from ..errors import IterationLimit, NumericalFailure
from .simplex import simplex_solve

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LpTolerances:
    feasibility: float = 1e-7
    optimality: float = 1e-7
    zero_pivot: float = 1e-10
    audit: float = 1e-7


TOLERANCES = LpTolerances()


class LpModel:
    """Variables are node vars ``z_v0..`` then edge vars ``z_e0..``, all boxed in ``[0, 1]``."""

    def __init__(self, node_count: int, edge_count: int, objective: LinearForm | np.ndarray,
                 sense: str = "max", names: list[str] | None = None):
        self.node_count = node_count
        self.edge_count = edge_count
        n = node_count + edge_count
        if isinstance(objective, LinearForm):
            self.objective = objective.dense(node_count, edge_count)
            self.offset = float(objective.constant)
        else:
            self.objective = np.asarray(objective, dtype=float)
            self.offset = 0.0
        if self.objective.shape != (n,):
            raise ValueError("objective length must equal the variable count")
        if sense not in ("min", "max"):
            raise ValueError(f"unknown sense {sense!r}")
        self.sense = sense
        self.names = names or ([f"z_v{v}" for v in range(node_count)] + [f"z_e{e}" for e in range(edge_count)])
        self._idx: list[np.ndarray] = []
        self._val: list[np.ndarray] = []
        self.rhs: list[float] = []
        self.row_names: list[str] = []
        self.lower = np.zeros(n)
        self.upper = np.ones(n)
        self._highs = None          # persistent solver for the incremental backend
        self._highs_rows = 0

    @property
    def variable_count(self) -> int:
        return self.node_count + self.edge_count

    @property
    def row_count(self) -> int:
        return len(self.rhs)

    def add_row(self, form: LinearForm, rhs: float, name: str | None = None):
        """Add ``form(z) >= rhs``; a constant inside ``form`` is moved to the right."""
        n = self.node_count
        idx = list(form.node_coeffs) + [n + e for e in form.edge_coeffs]
        val = list(form.node_coeffs.values()) + list(form.edge_coeffs.values())
        self._idx.append(np.array(idx, dtype=np.int64))
        self._val.append(np.array(val, dtype=float))
        self.rhs.append(float(rhs) - float(form.constant))
        self.row_names.append(name or f"c{len(self.rhs) - 1}")

    def add_cut(self, cut: Cut, name: str | None = None):
        self.add_row(cut.form, cut.bound, name)

    def set_bounds(self, var: int, lower: float, upper: float):
        if not (np.isfinite(lower) and np.isfinite(upper)):
            raise ValueError("bounds must be finite")
        self.lower[var] = lower
        self.upper[var] = upper
        self._highs = None

    def matrix(self) -> sparse.csr_matrix:
        m = self.row_count
        if m == 0:
            return sparse.csr_matrix((0, self.variable_count))
        lengths = [len(i) for i in self._idx]
        rows = np.repeat(np.arange(m), lengths)
        return sparse.csr_matrix((np.concatenate(self._val), (rows, np.concatenate(self._idx))),
                                 shape=(m, self.variable_count))

    def min_costs(self) -> np.ndarray:
        return self.objective if self.sense == "min" else -self.objective


@dataclass
class LpSolution:
    status: str
    objective: float
    x: np.ndarray = field(repr=False)
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _audit(model: LpModel, sol: LpSolution, tol: LpTolerances):
    A = model.matrix()
    x = sol.x
    if model.row_count:
        worst = float(np.max(np.asarray(model.rhs) - A @ x))
        if worst > tol.audit:
            raise NumericalFailure(f"returned point violates a row by {worst:.3g}")
    bound_viol = max(float(np.max(model.lower - x, initial=0)), float(np.max(x - model.upper, initial=0)))
    if bound_viol > tol.audit:
        raise NumericalFailure(f"returned point violates bounds by {bound_viol:.3g}")
    recomputed = float(model.objective @ x) + model.offset
    if abs(recomputed - sol.objective) > 1e-9 * max(1.0, abs(recomputed)):
        raise NumericalFailure("objective value does not match c.x")


BACKENDS = ("highs", "highs-scipy", "simplex")


def _sync_highs(model: LpModel, max_iter: int):
    h = model._highs
    if h is None:
        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        h.setOptionValue("presolve", "off")
        h.setOptionValue("solver", "simplex")
        h.setOptionValue("primal_feasibility_tolerance", 1e-9)
        h.setOptionValue("dual_feasibility_tolerance", 1e-9)
        n = model.variable_count
        h.addVars(n, model.lower, model.upper)
        h.changeColsCost(n, np.arange(n, dtype=np.int32), model.min_costs())
        model._highs, model._highs_rows = h, 0
    h.setOptionValue("simplex_iteration_limit", int(min(max_iter, 2**31 - 1)))
    new = range(model._highs_rows, model.row_count)
    if len(new):
        idx = [model._idx[r] for r in new]
        starts = np.cumsum([0] + [len(i) for i in idx[:-1]]).astype(np.int32)
        h.addRows(len(idx), np.asarray(model.rhs[model._highs_rows:]), np.full(len(idx), highspy.kHighsInf),
                  int(sum(len(i) for i in idx)), starts, np.concatenate(idx).astype(np.int32),
                  np.concatenate([model._val[r] for r in new]))
        model._highs_rows = model.row_count
    return h


def _solve_incremental(model: LpModel, max_iter: int, tol: LpTolerances) -> LpSolution:
    h = _sync_highs(model, max_iter)
    h.run()
    status = h.getModelStatus()
    iters = int(h.getInfo().simplex_iteration_count)
    if status == highspy.HighsModelStatus.kInfeasible:
        return LpSolution("infeasible", np.nan, np.full(model.variable_count, np.nan), iters)
    if status == highspy.HighsModelStatus.kIterationLimit:
        raise IterationLimit(f"HiGHS stopped after {iters} simplex iterations")
    if status != highspy.HighsModelStatus.kOptimal:
        model._highs = None
        raise NumericalFailure(f"HiGHS status {h.modelStatusToString(status)}")
    x = np.clip(np.asarray(h.getSolution().col_value), model.lower, model.upper)
    sol = LpSolution("optimal", float(model.objective @ x) + model.offset, x, iters)
    _audit(model, sol, tol)
    return sol


def solve(model: LpModel, backend: str = "highs", max_iter: int = 1_000_000,
          tol: LpTolerances = TOLERANCES) -> LpSolution:
    """Optimal basic solution of the model.

    ``backend="highs"`` keeps one HiGHS dual simplex instance per model and
    only passes the rows added since the previous call, so re-solves after a
    cut round start from the last basis. ``"highs-scipy"`` solves from
    scratch through :func:`scipy.optimize.linprog`. ``"simplex"`` runs the
    dense bounded-variable primal simplex of :mod:`betacuts.lp.simplex`
    (small models only).
    """
    if backend == "highs":
        return _solve_incremental(model, max_iter, tol)
    c = model.min_costs()
    if backend == "simplex":
        A = model.matrix().toarray()
        res = simplex_solve(c, A, np.asarray(model.rhs), model.lower, model.upper,
                            tol=tol.optimality * 1e-2, feasibility_tol=tol.feasibility,
                            max_iter=max_iter)
        if res.status == "infeasible":
            return LpSolution("infeasible", np.nan, res.x, res.iterations)
        x = np.clip(res.x, model.lower, model.upper)
        sol = LpSolution("optimal", float(model.objective @ x) + model.offset, x, res.iterations)
        _audit(model, sol, tol)
        return sol
    if backend != "highs-scipy":
        raise ValueError(f"unknown backend {backend!r}; choose from {', '.join(BACKENDS)}")
    A = model.matrix()
    kwargs = {}
    if model.row_count:
        kwargs = dict(A_ub=-A, b_ub=-np.asarray(model.rhs))
    res = linprog(c, bounds=np.column_stack([model.lower, model.upper]), method="highs-ds",
                  options={"primal_feasibility_tolerance": 1e-9, "dual_feasibility_tolerance": 1e-9,
                           "maxiter": max_iter, "presolve": False},
                  **kwargs)
    iters = int(getattr(res, "nit", 0) or 0)
    if res.status == 1:
        raise IterationLimit(res.message)
    if res.status == 2:
        return LpSolution("infeasible", np.nan, np.full(model.variable_count, np.nan), iters)
    if res.status != 0:
        raise NumericalFailure(f"HiGHS status {res.status}: {res.message}")
    x = np.clip(res.x, model.lower, model.upper)
    sol = LpSolution("optimal", float(model.objective @ x) + model.offset, x, iters)
    _audit(model, sol, tol)
    return sol


def _lp_term(coef: float, name: str, first: bool) -> str:
    if coef == int(coef):
        mag = str(abs(int(coef)))
    else:
        mag = repr(abs(float(coef)))
    sign = "-" if coef < 0 else ("" if first else "+")
    return f"{sign} {mag} {name}".strip() if first else f"{sign} {mag} {name}"


def export_lp(model: LpModel) -> str:
    """CPLEX LP-format text; the objective offset goes into a comment."""
    lines = []
    if model.offset:
        lines.append(f"\\ objective offset {model.offset!r}")
    lines.append("Minimize" if model.sense == "min" else "Maximize")
    obj_terms = [(c, model.names[j]) for j, c in enumerate(model.objective) if c != 0]
    if not obj_terms:
        obj_terms = [(0.0, model.names[0])] if model.variable_count else []
    lines.append(" obj: " + " ".join(_lp_term(c, nm, i == 0) for i, (c, nm) in enumerate(obj_terms)))
    lines.append("Subject To")
    for r in range(model.row_count):
        terms = [(float(c), model.names[j]) for j, c in zip(model._idx[r], model._val[r]) if c != 0]
        body = " ".join(_lp_term(c, nm, i == 0) for i, (c, nm) in enumerate(terms)) or f"0 {model.names[0]}"
        rhs = model.rhs[r]
        rhs_s = str(int(rhs)) if float(rhs).is_integer() else repr(rhs)
        lines.append(f" {model.row_names[r]}: {body} >= {rhs_s}")
    lines.append("Bounds")
    for j, nm in enumerate(model.names):
        lo, hi = model.lower[j], model.upper[j]
        fmt = lambda v: str(int(v)) if float(v).is_integer() else repr(float(v))
        lines.append(f" {fmt(lo)} <= {nm} <= {fmt(hi)}")
    lines.append("End")
    return "\n".join(lines) + "\n"
