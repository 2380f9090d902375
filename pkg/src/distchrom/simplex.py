"""Dense two-phase simplex method.

Small and dependency-free: problems here have at most a few dozen variables.
The tableau runs either in floating point or, with ``exact=True``, over
``fractions.Fraction`` so that integer-data problems are solved exactly.
Pivoting is Dantzig's rule, switching to Bland's rule after
``10 * (rows + cols)`` iterations so degenerate cycling cannot stall it.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from fractions import Fraction
from os import PathLike
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidParameterError, SolverError

FEAS_TOL = 1e-7


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class Constraint:
    coefficients: Sequence
    relation: str  # "<=", "=", ">="
    rhs: object

    def __post_init__(self):
        if self.relation not in ("<=", "=", ">="):
            raise InvalidParameterError(f"bad relation {self.relation!r}")


@dataclass
class LPProblem:
    """Optimise ``objective . x`` subject to linear constraints and variable bounds.

    ``bounds[j]`` is ``(lower, upper)`` with ``None`` for an infinite side;
    the default for every variable is ``(0, None)``.
    """

    objective: Sequence
    sense: str = "min"
    constraints: list[Constraint] = field(default_factory=list)
    bounds: Optional[list[tuple]] = None
    names: Optional[list[str]] = None

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise InvalidParameterError(f"sense must be 'min' or 'max', got {self.sense!r}")
        if len(self.objective) == 0:
            raise InvalidParameterError("LP needs at least one variable")
        if self.bounds is None:
            self.bounds = [(0, None)] * self.num_vars
        if len(self.bounds) != self.num_vars:
            raise InvalidParameterError("one bound pair per variable")
        for con in self.constraints:
            if len(con.coefficients) != self.num_vars:
                raise InvalidParameterError("constraint dimension does not match objective")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add(self, coefficients, relation, rhs) -> None:
        self.constraints.append(Constraint(list(coefficients), relation, rhs))

    def variable_names(self) -> list[str]:
        return self.names or [f"x{j}" for j in range(self.num_vars)]


@dataclass
class LPSolution:
    status: Status
    values: Optional[list] = None
    objective_value: Optional[object] = None
    iterations: int = 0


def _to_standard(problem: LPProblem, conv):
    """Rewrite as min c.y, A y (rel) b, y >= 0. Returns the pieces and a back-map."""
    columns = []  # per original var: list of (column index, sign), offset
    offsets = []
    ncols = 0
    extra_rows = []
    for j, (lo, hi) in enumerate(problem.bounds):
        if lo is not None:
            columns.append([(ncols, 1)])
            offsets.append(conv(lo))
            if hi is not None:
                extra_rows.append((ncols, conv(hi) - conv(lo)))
            ncols += 1
        elif hi is not None:
            columns.append([(ncols, -1)])
            offsets.append(conv(hi))
            ncols += 1
        else:
            columns.append([(ncols, 1), (ncols + 1, -1)])
            offsets.append(conv(0))
            ncols += 2

    sign = 1 if problem.sense == "min" else -1
    c = [conv(0)] * ncols
    const = conv(0)
    for j, cj in enumerate(problem.objective):
        cj = conv(cj) * sign
        const += cj * offsets[j]
        for col, s in columns[j]:
            c[col] += cj * s

    rows, rels, rhs = [], [], []
    for con in problem.constraints:
        row = [conv(0)] * ncols
        b = conv(con.rhs)
        for j, a in enumerate(con.coefficients):
            a = conv(a)
            if a == 0:
                continue
            b -= a * offsets[j]
            for col, s in columns[j]:
                row[col] += a * s
        rows.append(row)
        rels.append(con.relation)
        rhs.append(b)
    for col, ub in extra_rows:
        row = [conv(0)] * ncols
        row[col] = conv(1)
        rows.append(row)
        rels.append("<=")
        rhs.append(ub)
    return c, const, rows, rels, rhs, columns, offsets, ncols


class _Tableau:
    def __init__(self, T, basis, exact, tol, deadline=None):
        self.deadline = deadline
        self.T = T
        self.basis = basis
        self.exact = exact
        self.tol = tol
        self.iterations = 0

    def pivot(self, r, col):
        T = self.T
        T[r, :] = T[r, :] / T[r, col]
        for i in range(T.shape[0]):
            if i != r and T[i, col] != 0:
                T[i, :] = T[i, :] - T[i, col] * T[r, :]
        self.basis[r] = col
        self.iterations += 1

    def run(self, allowed: np.ndarray, max_iter: int) -> Status:
        """Minimise the objective stored in the last row over ``allowed`` columns."""
        T = self.T
        m = T.shape[0] - 1
        switch = 10 * (m + T.shape[1])
        count = 0
        while True:
            count += 1
            if count > max_iter:
                raise SolverError(f"simplex exceeded {max_iter} iterations")
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise BudgetExceeded("simplex ran out of time")
            z = T[-1, :-1]
            cand = [j for j in np.flatnonzero(allowed) if z[j] < -self.tol]
            if not cand:
                return Status.OPTIMAL
            if count <= switch:
                col = min(cand, key=lambda j: (z[j], j))
            else:
                col = cand[0]
            best = None
            for i in range(m):
                a = T[i, col]
                if a > self.tol:
                    ratio = T[i, -1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return Status.UNBOUNDED
            a = T[best[1], col]
            if not self.exact and abs(a) < 1e-12:
                raise SolverError(f"pivot element {a!r} too small (column {col})")
            self.pivot(best[1], col)


def solve_lp(
    problem: LPProblem, exact: bool = False, max_iter: int = 50_000, budget: Optional[float] = None
) -> LPSolution:
    """Solve ``problem`` to optimality or prove it infeasible/unbounded.

    ``budget`` is a wall-clock limit in seconds; exceeding it raises BudgetExceeded.
    """
    deadline = None if budget is None else time.monotonic() + budget
    conv = Fraction if exact else float
    tol = 0 if exact else 1e-9
    c, const, rows, rels, rhs, columns, offsets, ncols = _to_standard(problem, conv)
    m = len(rows)

    # normalise rows to b >= 0 (and unit scale in float mode); a ">= 0" row
    # is flipped too, so its slack can start in the basis
    for i in range(m):
        if not exact:
            scale = max([abs(x) for x in rows[i]] + [abs(rhs[i])] + [0.0])
            if scale > 0:
                rows[i] = [x / scale for x in rows[i]]
                rhs[i] = rhs[i] / scale
        if rhs[i] < 0 or (rhs[i] == 0 and rels[i] == ">="):
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
            rels[i] = {"<=": ">=", ">=": "<=", "=": "="}[rels[i]]

    n_slack = sum(1 for r in rels if r != "=")
    n_art = sum(1 for r in rels if r != "<=")
    width = ncols + n_slack + n_art
    dtype = object if exact else float
    T = np.empty((m + 1, width + 1), dtype=dtype)
    T[:] = conv(0)
    basis = [0] * m
    s_col, a_col = ncols, ncols + n_slack
    art_cols = []
    for i in range(m):
        T[i, :ncols] = rows[i]
        T[i, -1] = rhs[i]
        if rels[i] == "<=":
            T[i, s_col] = conv(1)
            basis[i] = s_col
            s_col += 1
        else:
            if rels[i] == ">=":
                T[i, s_col] = conv(-1)
                s_col += 1
            T[i, a_col] = conv(1)
            basis[i] = a_col
            art_cols.append(a_col)
            a_col += 1

    tab = _Tableau(T, basis, exact, tol, deadline)
    allowed = np.ones(width, dtype=bool)
    if art_cols:
        # phase 1: minimise the sum of artificials
        T[-1, :] = conv(0)
        for j in art_cols:
            T[-1, j] = conv(1)
        for i in range(m):
            if basis[i] in art_cols:
                T[-1, :] = T[-1, :] - T[i, :]
        tab.run(allowed, max_iter)
        infeas = -T[-1, -1]
        if infeas > (0 if exact else FEAS_TOL):
            return LPSolution(Status.INFEASIBLE, iterations=tab.iterations)
        art_set = set(art_cols)
        keep = []
        for i in range(m):
            if basis[i] in art_set:
                piv = [j for j in range(ncols + n_slack) if abs(T[i, j]) > (tol or 0)]
                if piv:
                    tab.pivot(i, max(piv, key=lambda j: abs(T[i, j])))
                    keep.append(i)
                # else: redundant row, dropped below
            else:
                keep.append(i)
        T = np.vstack([T[keep, :], T[-1:, :]])
        tab.T = T
        tab.basis = [basis[i] for i in keep]
        basis = tab.basis
        m = len(keep)
        allowed[art_cols] = False

    # phase 2
    T[-1, :] = conv(0)
    T[-1, :ncols] = c
    for i in range(m):
        cb = T[-1, basis[i]]
        if cb != 0:
            T[-1, :] = T[-1, :] - cb * T[i, :]
    status = tab.run(allowed, max_iter)
    if status == Status.UNBOUNDED:
        return LPSolution(Status.UNBOUNDED, iterations=tab.iterations)

    y = [conv(0)] * width
    for i in range(m):
        y[basis[i]] = T[i, -1]
    x = []
    for j in range(problem.num_vars):
        x.append(offsets[j] + sum(s * y[col] for col, s in columns[j]))
    obj = sum(conv(cj) * xj for cj, xj in zip(problem.objective, x))
    sol = LPSolution(Status.OPTIMAL, x, obj, tab.iterations)
    _verify(problem, sol, exact)
    return sol


def _verify(problem: LPProblem, sol: LPSolution, exact: bool) -> None:
    tol = 0 if exact else FEAS_TOL
    for k, con in enumerate(problem.constraints):
        lhs = sum(float(a) * float(v) for a, v in zip(con.coefficients, sol.values)) if not exact else sum(
            Fraction(a) * v for a, v in zip(con.coefficients, sol.values)
        )
        rhs = con.rhs
        scale = 1.0 if exact else max(1.0, max(abs(float(a)) for a in con.coefficients) if con.coefficients else 1.0)
        viol = {"<=": lhs - rhs, ">=": rhs - lhs, "=": abs(lhs - rhs)}[con.relation]
        if viol > tol * scale:
            raise SolverError(f"constraint {k} violated by {float(viol):.3g} at reported optimum")
    for j, (lo, hi) in enumerate(problem.bounds):
        v = sol.values[j]
        if (lo is not None and v < lo - tol) or (hi is not None and v > hi + tol):
            raise SolverError(f"variable {j} = {float(v):.3g} outside its bounds")


def _fmt(c) -> str:
    return f"{float(c):.17g}"


def write_lp(problem: LPProblem, path: str | PathLike) -> None:
    """Dump ``problem`` in CPLEX LP text format for external cross-checks."""
    names = problem.variable_names()

    def expr(coeffs):
        terms = [f"{'+' if float(a) >= 0 else '-'} {_fmt(abs(float(a)))} {n}" for a, n in zip(coeffs, names) if a != 0]
        return " ".join(terms) if terms else f"0 {names[0]}"

    with open(path, "w") as fh:
        fh.write("Maximize\n" if problem.sense == "max" else "Minimize\n")
        fh.write(f" obj: {expr(problem.objective)}\n")
        fh.write("Subject To\n")
        for k, con in enumerate(problem.constraints):
            fh.write(f" c{k}: {expr(con.coefficients)} {con.relation} {_fmt(con.rhs)}\n")
        fh.write("Bounds\n")
        for n, (lo, hi) in zip(names, problem.bounds):
            if lo is None and hi is None:
                fh.write(f" {n} free\n")
            else:
                lo_s = "-inf" if lo is None else _fmt(lo)
                hi_s = "+inf" if hi is None else _fmt(hi)
                fh.write(f" {lo_s} <= {n} <= {hi_s}\n")
        fh.write("End\n")
