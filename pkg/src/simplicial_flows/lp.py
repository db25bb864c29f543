"""Exact rational linear programming: a dense two-phase simplex tableau.

Pivoting follows Bland's rule throughout, so the solver terminates on
degenerate problems.  Optimal answers are basic feasible solutions of the
internal standard form, i.e. vertices of the feasible region (free
variables are split into a difference of two non-negative parts, so
problems with a lineality space return a vertex of the split polyhedron).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .chains import SparseMatrix

__all__ = [
    "MalformedLpError",
    "Constraint",
    "LinearProgram",
    "LpSolution",
    "solve",
    "feasible_point",
    "LE",
    "EQ",
    "GE",
]

LE, EQ, GE = "<=", "==", ">="
_RELATIONS = (LE, EQ, GE)


class MalformedLpError(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple[Fraction, ...]
    relation: str
    rhs: Fraction


def _q(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point data is not accepted")
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class LinearProgram:
    """``sense`` is ``"max"`` or ``"min"``.

    ``bounds[j]`` is ``(lower, upper)`` where ``None`` stands for an
    infinite bound.  Omitted bounds default to ``(0, None)``.
    """

    sense: str
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...] = ()
    bounds: tuple[tuple[Fraction | None, Fraction | None], ...] | None = None

    def __post_init__(self):
        if self.sense not in ("max", "min"):
            raise MalformedLpError(f"unknown sense {self.sense!r}")
        n = len(self.objective)
        object.__setattr__(self, "objective", tuple(_q(c) for c in self.objective))
        cons = []
        for c in self.constraints:
            if not isinstance(c, Constraint):
                coeffs, rel, rhs = c
                c = Constraint(tuple(coeffs), rel, rhs)
            if len(c.coefficients) != n:
                raise MalformedLpError(f"constraint row of length {len(c.coefficients)}, expected {n}")
            if c.relation not in _RELATIONS:
                raise MalformedLpError(f"unknown relation {c.relation!r}")
            cons.append(Constraint(tuple(_q(a) for a in c.coefficients), c.relation, _q(c.rhs)))
        object.__setattr__(self, "constraints", tuple(cons))
        bounds = self.bounds if self.bounds is not None else ((Fraction(0), None),) * n
        if len(bounds) != n:
            raise MalformedLpError(f"{len(bounds)} bounds for {n} variables")
        clean = []
        for lo, hi in bounds:
            lo = None if lo is None else _q(lo)
            hi = None if hi is None else _q(hi)
            if lo is not None and hi is not None and lo > hi:
                raise MalformedLpError(f"lower bound {lo} exceeds upper bound {hi}")
            clean.append((lo, hi))
        object.__setattr__(self, "bounds", tuple(clean))

    @property
    def n_vars(self) -> int:
        return len(self.objective)


@dataclass
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list[Fraction] | None = None
    objective: Fraction | None = None
    basis: list[int] = field(default_factory=list)
    basis_matrix: SparseMatrix | None = None
    ray: list[Fraction] | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


# ---------------------------------------------------------------------------
# standard form
# ---------------------------------------------------------------------------


class _StandardForm:
    """``min c·z  s.t.  A z = b, z >= 0, b >= 0`` plus the map back to ``x``."""

    def __init__(self, lp: LinearProgram):
        n = lp.n_vars
        # x_j = offset_j + sum(coef * z_col)
        self.offset = [Fraction(0)] * n
        self.terms: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        ncols = 0
        extra_rows = []  # (column, upper) for z_col <= upper
        for j, (lo, hi) in enumerate(lp.bounds):
            if lo is not None:
                self.offset[j] = lo
                self.terms[j].append((ncols, 1))
                if hi is not None:
                    extra_rows.append((ncols, hi - lo))
                ncols += 1
            elif hi is not None:
                self.offset[j] = hi
                self.terms[j].append((ncols, -1))
                ncols += 1
            else:
                self.terms[j].append((ncols, 1))
                self.terms[j].append((ncols + 1, -1))
                ncols += 2
        self.n_structural = ncols

        rows: list[dict[int, Fraction]] = []
        rhs: list[Fraction] = []
        rels: list[str] = []
        for con in lp.constraints:
            row: dict[int, Fraction] = {}
            b = con.rhs
            for j, a in enumerate(con.coefficients):
                if not a:
                    continue
                b -= a * self.offset[j]
                for col, s in self.terms[j]:
                    row[col] = row.get(col, Fraction(0)) + a * s
            rows.append({k: v for k, v in row.items() if v})
            rhs.append(b)
            rels.append(con.relation)
        for col, ub in extra_rows:
            rows.append({col: Fraction(1)})
            rhs.append(ub)
            rels.append(LE)

        cost = [Fraction(0)] * ncols
        sign = -1 if lp.sense == "max" else 1
        self.const = Fraction(0)
        for j, c in enumerate(lp.objective):
            if not c:
                continue
            self.const += c * self.offset[j]
            for col, s in self.terms[j]:
                cost[col] += sign * c * s

        # slacks / surpluses
        self.slack_cols = []
        initial_basis: list[int | None] = []
        for i, rel in enumerate(rels):
            if rel == EQ:
                initial_basis.append(None)
                continue
            col = ncols
            ncols += 1
            cost.append(Fraction(0))
            rows[i][col] = Fraction(1 if rel == LE else -1)
            self.slack_cols.append(col)
            initial_basis.append(col)
        for i in range(len(rows)):
            if rhs[i] < 0:
                rows[i] = {k: -v for k, v in rows[i].items()}
                rhs[i] = -rhs[i]
            b = initial_basis[i]
            if b is not None and rows[i][b] != 1:
                initial_basis[i] = None
        self.n_real = ncols
        self.artificial = []
        for i in range(len(rows)):
            if initial_basis[i] is None:
                col = ncols
                ncols += 1
                rows[i][col] = Fraction(1)
                self.artificial.append(col)
                initial_basis[i] = col
        cost.extend([Fraction(0)] * (ncols - len(cost)))
        self.rows = rows
        self.rhs = rhs
        self.cost = cost
        self.ncols = ncols
        self.basis = [b for b in initial_basis]  # type: ignore[misc]
        self.sign = sign

    def to_x(self, z: Sequence[Fraction]) -> list[Fraction]:
        return [
            self.offset[j] + sum((s * z[col] for col, s in self.terms[j]), Fraction(0))
            for j in range(len(self.offset))
        ]

    def direction_to_x(self, dz: Sequence[Fraction]) -> list[Fraction]:
        return [sum((s * dz[col] for col, s in self.terms[j]), Fraction(0)) for j in range(len(self.offset))]


class _Tableau:
    def __init__(self, sf: _StandardForm):
        self.ncols = sf.ncols
        width = sf.ncols + 1
        self.T = []
        for row, b in zip(sf.rows, sf.rhs):
            r = [Fraction(0)] * width
            for k, v in row.items():
                r[k] = v
            r[-1] = b
            self.T.append(r)
        self.basis = list(sf.basis)
        self.obj = [Fraction(0)] * width
        self.pivots = 0

    def set_objective(self, cost: Sequence[Fraction]):
        width = self.ncols + 1
        obj = list(cost) + [Fraction(0)]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.T[i]
                for j in range(width):
                    if row[j]:
                        obj[j] -= cb * row[j]
        self.obj = obj

    def pivot(self, r: int, c: int):
        T = self.T
        prow = T[r]
        inv = 1 / prow[c]
        nz = [j for j, v in enumerate(prow) if v]
        for j in nz:
            prow[j] *= inv
        for i, row in enumerate(T):
            if i != r and row[c]:
                f = row[c]
                for j in nz:
                    row[j] -= f * prow[j]
        if self.obj[c]:
            f = self.obj[c]
            for j in nz:
                self.obj[j] -= f * prow[j]
        self.basis[r] = c
        self.pivots += 1

    def run(self, allowed: Sequence[bool]) -> tuple[str, int | None]:
        """Bland's rule minimisation; returns ("optimal"|"unbounded", entering column)."""
        while True:
            enter = next((j for j in range(self.ncols) if allowed[j] and self.obj[j] < 0), None)
            if enter is None:
                return "optimal", None
            best = None
            for i, row in enumerate(self.T):
                a = row[enter]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded", enter
            self.pivot(best[1], enter)

    def solution(self) -> list[Fraction]:
        z = [Fraction(0)] * self.ncols
        for i, b in enumerate(self.basis):
            z[b] = self.T[i][-1]
        return z


def _basis_matrix(sf: _StandardForm, kept_rows: list[int], basis: list[int]) -> SparseMatrix:
    entries = []
    for a, i in enumerate(kept_rows):
        row = sf.rows[i]
        for b, col in enumerate(basis):
            v = row.get(col)
            if v:
                entries.append((a, b, v))
    return SparseMatrix(len(kept_rows), len(basis), tuple(entries))


def _phase_one(sf: _StandardForm) -> tuple[_Tableau, list[int]] | None:
    """Drive the tableau to a basic feasible solution; None if infeasible.

    Returns the tableau and the original indices of the rows kept after
    dropping redundant equality rows.
    """
    tab = _Tableau(sf)
    art = set(sf.artificial)
    kept = list(range(len(tab.T)))
    if art:
        cost = [Fraction(0)] * sf.ncols
        for c in art:
            cost[c] = Fraction(1)
        tab.set_objective(cost)
        tab.run([True] * sf.ncols)
        if -tab.obj[-1] > 0:
            return None
        # pivot remaining (zero-valued) artificials out of the basis
        i = 0
        while i < len(tab.T):
            if tab.basis[i] in art:
                row = tab.T[i]
                c = next((j for j in range(sf.n_real) if row[j]), None)
                if c is None:
                    del tab.T[i]
                    del tab.basis[i]
                    del kept[i]
                    continue
                tab.pivot(i, c)
            i += 1
    return tab, kept


def solve(lp: LinearProgram) -> LpSolution:
    sf = _StandardForm(lp)
    start = _phase_one(sf)
    if start is None:
        return LpSolution("infeasible")
    tab, kept = start
    pivots = tab.pivots
    tab.set_objective(sf.cost)
    allowed = [j < sf.n_real for j in range(sf.ncols)]
    status, enter = tab.run(allowed)
    pivots = tab.pivots
    if status == "unbounded":
        dz = [Fraction(0)] * sf.ncols
        dz[enter] = Fraction(1)
        for i, b in enumerate(tab.basis):
            dz[b] = -tab.T[i][enter]
        z = tab.solution()
        return LpSolution("unbounded", x=sf.to_x(z), ray=sf.direction_to_x(dz), pivots=pivots)
    z = tab.solution()
    x = sf.to_x(z)
    value = sum((c * v for c, v in zip(lp.objective, x)), Fraction(0))
    return LpSolution(
        "optimal",
        x=x,
        objective=value,
        basis=list(tab.basis),
        basis_matrix=_basis_matrix(sf, kept, list(tab.basis)),
        pivots=pivots,
    )


def feasible_point(
    constraints: Sequence,
    bounds: Sequence[tuple[Fraction | None, Fraction | None]] | None = None,
    n_vars: int | None = None,
) -> list[Fraction] | None:
    """Some vertex of ``{x : constraints, bounds}`` or ``None`` if it is empty."""
    cons = [c if isinstance(c, Constraint) else Constraint(tuple(c[0]), c[1], c[2]) for c in constraints]
    if n_vars is None:
        if cons:
            n_vars = len(cons[0].coefficients)
        elif bounds is not None:
            n_vars = len(bounds)
        else:
            raise MalformedLpError("cannot infer the number of variables")
    lp = LinearProgram("min", (Fraction(0),) * n_vars, tuple(cons), tuple(bounds) if bounds is not None else None)
    sf = _StandardForm(lp)
    start = _phase_one(sf)
    if start is None:
        return None
    return sf.to_x(start[0].solution())
