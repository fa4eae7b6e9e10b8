"""Exact rational linear programming with Farkas certificates.

A two-phase dense tableau simplex method in exact rational arithmetic
using Bland's rule (lowest index enters, lowest basic index breaks ratio
ties), so results are deterministic and the method cannot cycle.

Variables are free unless listed in ``LinearProgram.nonnegative``.  When a
program is infeasible the outcome carries multipliers ``y`` over the
constraints with

* ``y[r] >= 0`` on ``<=`` rows, ``y[r] <= 0`` on ``>=`` rows, free on ``=`` rows,
* ``sum_r y[r] * row_r`` zero on free variables and ``>= 0`` on nonnegative ones,
* ``sum_r y[r] * rhs_r < 0``,

which is an exact proof that no solution exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

try:  # exact and roughly ten times faster than Fraction inside the tableau
    from gmpy2 import mpq as _Q

    def _to_fraction(q) -> Fraction:
        return Fraction(int(q.numerator), int(q.denominator))

except ImportError:  # pragma: no cover
    _Q = Fraction

    def _to_fraction(q) -> Fraction:
        return q

LE, EQ, GE = "<=", "=", ">="
RELATIONS = (LE, EQ, GE)
SENSES = ("feasibility", "minimize", "maximize")

_ZERO = Fraction(0)
_QZERO = _Q(0)


@dataclass(frozen=True)
class Constraint:
    row: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise InputError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "row", tuple(Fraction(v) for v in self.row))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((a * v for a, v in zip(self.row, x) if a), _ZERO)
        if self.relation == LE:
            return lhs <= self.rhs
        if self.relation == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    num_vars: int
    constraints: tuple[Constraint, ...]
    objective: tuple[Fraction, ...] | None = None
    sense: str = "feasibility"
    nonnegative: frozenset[int] = frozenset()

    def __post_init__(self):
        cons = tuple(
            c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints
        )
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "nonnegative", frozenset(self.nonnegative))
        if self.sense not in SENSES:
            raise InputError(f"unknown sense {self.sense!r}")
        if self.num_vars < 0:
            raise InputError("num_vars must be nonnegative")
        for i, c in enumerate(cons):
            if len(c.row) != self.num_vars:
                raise InputError(
                    f"constraint {i} has {len(c.row)} coefficients, expected {self.num_vars}"
                )
        if self.objective is not None:
            obj = tuple(Fraction(v) for v in self.objective)
            if len(obj) != self.num_vars:
                raise InputError(
                    f"objective has {len(obj)} coefficients, expected {self.num_vars}"
                )
            object.__setattr__(self, "objective", obj)
        elif self.sense != "feasibility":
            raise InputError(f"sense {self.sense!r} needs an objective")
        if any(not 0 <= j < self.num_vars for j in self.nonnegative):
            raise InputError("nonnegative index out of range")


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "feasible" | "infeasible" | "unbounded"
    solution: tuple[Fraction, ...] | None = None
    optimum: Fraction | None = None
    farkas: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None
    pivots: int = field(default=0, compare=False)

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


class _Tableau:
    """Dense tableau in equality standard form with nonnegative columns."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.cost: list[Fraction] = []
        self.pivots = 0

    def set_cost(self, costs: Sequence[Fraction]) -> None:
        cost = list(costs) + [_QZERO]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                cost = [c - cb * v for c, v in zip(cost, self.rows[i])]
        self.cost = cost

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        p = row[c]
        if p != 1:
            row = [v / p for v in row]
            self.rows[r] = row
        nz = [(k, v) for k, v in enumerate(row) if v]
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[c]
                if f:
                    for k, v in nz:
                        other[k] -= f * v
        f = self.cost[c]
        if f:
            for k, v in nz:
                self.cost[k] -= f * v
        self.basis[r] = c
        self.pivots += 1

    def optimize(self, allowed: int) -> int | None:
        """Run Bland's rule over columns < allowed.

        Returns None at optimality, or the entering column that proves
        unboundedness.
        """
        while True:
            enter = next((j for j in range(allowed) if self.cost[j] < 0), None)
            if enter is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return enter
            self.pivot(best[1], enter)

    def values(self, ncols: int) -> list[Fraction]:
        x = [_ZERO] * ncols
        for i, b in enumerate(self.basis):
            if b < ncols:
                x[b] = _to_fraction(self.rows[i][-1])
        return x


def lp_solve(lp: LinearProgram) -> LpOutcome:
    """Solve ``lp`` exactly.

    Feasibility-only programs stop after phase one.  Maximization is
    handled by minimizing the negated objective.
    """
    n = lp.num_vars
    # Column layout: one column per variable, then one negative part per
    # free variable, then one slack per inequality, then artificials.
    columns: list[tuple[int, int]] = [(j, 1) for j in range(n)]
    columns += [(j, -1) for j in range(n) if j not in lp.nonnegative]
    n_struct = len(columns)
    slack_of: dict[int, int] = {}
    for r, c in enumerate(lp.constraints):
        if c.relation != EQ:
            slack_of[r] = len(columns)
            columns.append((-1, 0))
    n_real = len(columns)

    rows: list[list] = []
    flips: list[int] = []
    unit_cols: list[int] = []
    n_art = 0
    for r, c in enumerate(lp.constraints):
        sign = -1 if c.rhs < 0 else 1
        row = [_QZERO] * n_real
        for k in range(n_struct):
            j, s = columns[k]
            a = c.row[j]
            if a:
                row[k] = _Q(sign * s * a)
        if r in slack_of:
            row[slack_of[r]] = _Q(sign if c.relation == LE else -sign)
        row.append(_Q(sign * c.rhs))
        flips.append(sign)
        rows.append(row)
        if r in slack_of and row[slack_of[r]] == 1:
            unit_cols.append(slack_of[r])
        else:
            unit_cols.append(-1)
            n_art += 1

    width = n_real + n_art
    art = n_real
    for r, row in enumerate(rows):
        rhs = row.pop()
        row.extend([_QZERO] * n_art)
        if unit_cols[r] < 0:
            row[art] = _Q(1)
            unit_cols[r] = art
            art += 1
        row.append(rhs)

    tab = _Tableau(rows, list(unit_cols))
    phase1_cost = [_QZERO] * n_real + [_Q(1)] * n_art
    if n_art:
        tab.set_cost(phase1_cost)
        tab.optimize(width)
        if tab.cost[-1] != 0:
            # Phase-one duals w_r = c_unit - reduced_cost_unit, mapped back
            # through the row sign flips.
            farkas = tuple(
                _to_fraction(-flips[r] * (phase1_cost[unit_cols[r]] - tab.cost[unit_cols[r]]))
                for r in range(len(rows))
            )
            return LpOutcome("infeasible", farkas=farkas, pivots=tab.pivots)
        _drive_out_artificials(tab, n_real)

    def to_original(vals: Sequence[Fraction]) -> tuple[Fraction, ...]:
        x = [_ZERO] * n
        for k in range(n_struct):
            j, s = columns[k]
            if vals[k]:
                x[j] += s * vals[k]
        return tuple(x)

    if lp.sense == "feasibility":
        return LpOutcome("feasible", solution=to_original(tab.values(n_real)), pivots=tab.pivots)

    obj = lp.objective
    flip_obj = -1 if lp.sense == "maximize" else 1
    costs = [_QZERO] * width
    for k in range(n_struct):
        j, s = columns[k]
        costs[k] = _Q(flip_obj * s * obj[j])
    tab.set_cost(costs)
    enter = tab.optimize(n_real)
    x = to_original(tab.values(n_real))
    if enter is not None:
        direction = [_ZERO] * n_real
        direction[enter] = Fraction(1)
        for i, b in enumerate(tab.basis):
            if b < n_real:
                direction[b] = -_to_fraction(tab.rows[i][enter])
        return LpOutcome(
            "unbounded", solution=x, ray=to_original(direction), pivots=tab.pivots
        )
    optimum = sum((a * v for a, v in zip(obj, x) if a), _ZERO)
    return LpOutcome("feasible", solution=x, optimum=optimum, pivots=tab.pivots)


def _drive_out_artificials(tab: _Tableau, n_real: int) -> None:
    """Pivot zero-valued artificials out of the basis; drop redundant rows."""
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n_real:
            row = tab.rows[i]
            c = next((k for k in range(n_real) if row[k] != 0), None)
            if c is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, c)
        i += 1


def verify_certificate(lp: LinearProgram, outcome: LpOutcome) -> bool:
    """Independently check an outcome against ``lp`` by exact substitution."""
    n = lp.num_vars
    if outcome.solution is not None and len(outcome.solution) != n:
        raise InputError(f"solution has length {len(outcome.solution)}, expected {n}")
    if outcome.status == "infeasible":
        y = outcome.farkas
        if y is None:
            return False
        if len(y) != len(lp.constraints):
            raise InputError(
                f"certificate has length {len(y)}, expected {len(lp.constraints)}"
            )
        combined = [_ZERO] * n
        rhs = _ZERO
        for mult, c in zip(y, lp.constraints):
            if (c.relation == LE and mult < 0) or (c.relation == GE and mult > 0):
                return False
            if mult:
                for j, a in enumerate(c.row):
                    if a:
                        combined[j] += mult * a
                rhs += mult * c.rhs
        for j, v in enumerate(combined):
            if v < 0 or (v > 0 and j not in lp.nonnegative):
                return False
        return rhs < 0

    x = outcome.solution
    if x is None or not _is_feasible(lp, x):
        return False
    if outcome.status == "unbounded":
        return _is_improving_ray(lp, outcome.ray)
    if lp.sense != "feasibility":
        return outcome.optimum == sum(
            (a * v for a, v in zip(lp.objective, x)), _ZERO
        )
    return True


def _is_feasible(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    if any(x[j] < 0 for j in lp.nonnegative):
        return False
    return all(c.holds(x) for c in lp.constraints)


def _is_improving_ray(lp: LinearProgram, d: Sequence[Fraction] | None) -> bool:
    if d is None or len(d) != lp.num_vars or lp.objective is None:
        return False
    if any(d[j] < 0 for j in lp.nonnegative):
        return False
    for c in lp.constraints:
        if not Constraint(c.row, c.relation, 0).holds(d):
            return False
    gain = sum((a * v for a, v in zip(lp.objective, d)), _ZERO)
    return gain > 0 if lp.sense == "maximize" else gain < 0


def constraints(
    rows: Iterable[tuple[Sequence, str, object]],
) -> tuple[Constraint, ...]:
    """Build constraints from ``(row, relation, rhs)`` triples."""
    return tuple(Constraint(tuple(row), rel, rhs) for row, rel, rhs in rows)
