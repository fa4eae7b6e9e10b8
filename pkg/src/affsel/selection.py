"""Affine selection solvers.

* :func:`global_selection` decides whether one affine map selects from
  ``F`` on all of ``D``.  Only the domain vertices are constrained: if
  ``(v, f(v))`` is in the graph for every vertex ``v`` then, ``f`` being
  affine and the graph convex, ``(x, f(x))`` is in the graph for every
  convex combination ``x`` of them.
* :func:`local_selection` fits a small simplex around an interior point,
  picks a fiber point over each vertex and interpolates; the same
  convex-combination argument makes the interpolant a selection on the
  whole simplex.
* :func:`sandwich` finds an affine function between lower and upper data.

Feasible selection LPs pick the solution of minimal l1 norm of the
coefficients, so outputs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InputError, NotInteriorError
from .linalg import Vector, as_vector
from .lp import EQ, GE, LE, LinearProgram, LpOutcome, lp_solve
from .multifunction import (
    AuditReport,
    GraphMultifunction,
    SampledMultifunction,
    audit_intersection,
    canonical_fiber_point,
    distinct_domain_vertices,
    domain_vertices,
    fiber_contains,
    in_domain,
)
from .polytope import AffineMap, Simplex, affine_interpolate

MAX_HALVINGS = 64
_ONE = Fraction(1)
_ZERO = Fraction(0)


@dataclass(frozen=True)
class SpotCheck:
    point: Vector
    value: Vector
    member: bool


@dataclass(frozen=True)
class SelectionOutcome:
    status: str  # "found" | "none_exists"
    map: AffineMap | None = None
    certificate: LpOutcome | None = None
    lp: LinearProgram | None = None
    verification: tuple[SpotCheck, ...] = ()
    intersection_audit: AuditReport | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


@dataclass(frozen=True)
class LocalSelection:
    center: Vector
    simplex: Simplex
    map: AffineMap
    shrink_exponent: int
    values: tuple[Vector, ...]
    verification: tuple[SpotCheck, ...] = ()


@dataclass(frozen=True)
class SelectionCheck:
    trials: int
    failures: tuple[tuple[Vector, Vector], ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def random_point(points: Sequence[Vector], rng: random.Random) -> Vector:
    """A random convex combination of ``points`` with small rational weights."""
    weights = [rng.randint(0, 6) for _ in points]
    if not any(weights):
        weights[rng.randrange(len(points))] = 1
    total = sum(weights)
    dim = len(points[0])
    return tuple(
        sum((Fraction(w, total) * p[d] for w, p in zip(weights, points) if w), _ZERO)
        for d in range(dim)
    )


class _CoefficientBlock:
    """Nonnegative split variables for an m x n matrix and an m-vector."""

    def __init__(self, n: int, m: int):
        self.n, self.m = n, m
        self.size = 2 * m * (n + 1)

    def column(self, r: int, d: int) -> tuple[int, int]:
        """Positive/negative columns of matrix entry (r, d); d == n is the offset."""
        k = r * (self.n + 1) + d
        return k, k + self.m * (self.n + 1)

    def row_for(self, r: int, x: Sequence[Fraction], scale: Fraction, width: int) -> list:
        row = [_ZERO] * width
        for d in range(self.n + 1):
            coef = x[d] if d < self.n else _ONE
            if coef:
                pos, neg = self.column(r, d)
                row[pos] = scale * coef
                row[neg] = -scale * coef
        return row

    def decode(self, solution: Sequence[Fraction]) -> AffineMap:
        vals = [
            [solution[self.column(r, d)[0]] - solution[self.column(r, d)[1]] for d in range(self.n + 1)]
            for r in range(self.m)
        ]
        return AffineMap(
            self.n, self.m, tuple(tuple(v[: self.n]) for v in vals), tuple(v[self.n] for v in vals)
        )


def selection_lp(G: GraphMultifunction) -> tuple[LinearProgram, _CoefficientBlock]:
    """The LP whose feasible points are affine selections of ``G`` on ``D``."""
    n, m = G.n, G.m
    block = _CoefficientBlock(n, m)
    verts = G.graph.vertices
    k = len(verts)
    dom = distinct_domain_vertices(G)
    width = block.size + k * len(dom)
    rows = []
    for s, v in enumerate(dom):
        off = block.size + s * k
        row = [_ZERO] * width
        row[off : off + k] = [_ONE] * k
        rows.append((row, EQ, _ONE))
        for d in range(n):
            row = [_ZERO] * width
            row[off : off + k] = [g[d] for g in verts]
            rows.append((row, EQ, v[d]))
        for r in range(m):
            # sum(lambda * y_r) - (A v + b)_r = 0
            row = block.row_for(r, v, -_ONE, width)
            row[off : off + k] = [g[n + r] for g in verts]
            rows.append((row, EQ, _ZERO))
    objective = [_ONE] * block.size + [_ZERO] * (width - block.size)
    lp = LinearProgram(width, rows, objective, "minimize", frozenset(range(width)))
    return lp, block


def global_selection(G: GraphMultifunction, spot_checks: int = 20, seed: int = 0) -> SelectionOutcome:
    lp, block = selection_lp(G)
    out = lp_solve(lp)
    if out.status == "infeasible":
        return SelectionOutcome("none_exists", certificate=out, lp=lp)
    f = block.decode(out.solution)
    rng = random.Random(seed)
    dom = domain_vertices(G)
    checks = []
    for _ in range(spot_checks):
        x = random_point(dom, rng)
        y = f(x)
        checks.append(SpotCheck(x, y, fiber_contains(G, x, y)))
    return SelectionOutcome("found", map=f, lp=lp, verification=tuple(checks))


def _candidate_simplex(x0: Vector, alpha: Fraction) -> list[Vector]:
    n = len(x0)
    verts = [tuple(x0[d] + (alpha if d == i else 0) for d in range(n)) for i in range(n)]
    verts.append(tuple(c - alpha for c in x0))
    return verts


def local_selection(
    G: GraphMultifunction, x0: Sequence, checks: int = 100, seed: int = 0
) -> LocalSelection:
    x0 = as_vector(x0)
    if len(x0) != G.n:
        raise InputError(f"x0 has length {len(x0)}, expected {G.n}")
    if not in_domain(G, x0):
        raise DomainError(f"point {_fmt(x0)} is outside the domain")
    alpha = _ONE
    for h in range(MAX_HALVINGS + 1):
        verts = _candidate_simplex(x0, alpha)
        if all(in_domain(G, v) for v in verts):
            break
        alpha /= 2
    else:
        raise NotInteriorError(
            f"point {_fmt(x0)} is not interior: no simplex fits after {MAX_HALVINGS} halvings"
        )
    simplex = Simplex(tuple(verts))
    values = tuple(canonical_fiber_point(G, v) for v in verts)
    f = affine_interpolate(simplex, values)
    rng = random.Random(seed)
    spot = []
    for _ in range(checks):
        x = random_point(simplex.vertices, rng)
        y = f(x)
        spot.append(SpotCheck(x, y, fiber_contains(G, x, y)))
    if not all(c.member for c in spot):
        raise RuntimeError("interpolant left the graph; the graph polytope is inconsistent")
    return LocalSelection(x0, simplex, f, h, values, tuple(spot))


def sandwich(
    lower: Sequence[tuple[Sequence, object]], upper: Sequence[tuple[Sequence, object]]
) -> SelectionOutcome:
    """Affine ``a`` with ``a(p) >= v`` on lower data and ``a(q) <= w`` on upper data."""
    if not lower or not upper:
        raise InputError("lower and upper data must both be nonempty")
    lower = [(as_vector(p), Fraction(v)) for p, v in lower]
    upper = [(as_vector(p), Fraction(v)) for p, v in upper]
    n = len(lower[0][0])
    if any(len(p) != n for p, _ in lower + upper):
        raise InputError(f"all data points must have length {n}")
    block = _CoefficientBlock(n, 1)
    width = block.size
    rows = [(block.row_for(0, p, _ONE, width), GE, v) for p, v in lower]
    rows += [(block.row_for(0, p, _ONE, width), LE, v) for p, v in upper]
    lp = LinearProgram(width, rows, [_ONE] * width, "minimize", frozenset(range(width)))
    out = lp_solve(lp)
    if out.status == "infeasible":
        return SelectionOutcome("none_exists", certificate=out, lp=lp)
    a = block.decode(out.solution)
    checks = [SpotCheck(p, a(p), a(p)[0] >= v) for p, v in lower]
    checks += [SpotCheck(p, a(p), a(p)[0] <= v) for p, v in upper]
    return SelectionOutcome("found", map=a, lp=lp, verification=tuple(checks))


def interval_selection_1d(M: SampledMultifunction) -> SelectionOutcome:
    """Affine selection of interval data on the line, with the intersection audit."""
    if M.n != 1 or M.m != 1:
        raise InputError(f"interval data needs n = m = 1, got n = {M.n}, m = {M.m}")
    lower, upper = [], []
    for p, value in M.samples:
        ends = [v[0] for v in value.vertices]
        lower.append((p, min(ends)))
        upper.append((p, max(ends)))
    return replace(sandwich(lower, upper), intersection_audit=audit_intersection(M))


def verify_selection(
    G: GraphMultifunction,
    f: AffineMap,
    trials: int = 100,
    seed: int = 0,
    region: Sequence[Sequence] | None = None,
) -> SelectionCheck:
    """Check ``f(x) in F(x)`` at seeded random points of ``D`` (or of ``region``)."""
    if f.n != G.n or f.m != G.m:
        raise InputError(f"map is {f.n}->{f.m}, multifunction is {G.n}->{G.m}")
    pts = [as_vector(p) for p in region] if region is not None else domain_vertices(G)
    rng = random.Random(seed)
    failures = []
    for _ in range(trials):
        x = random_point(pts, rng)
        y = f(x)
        if not fiber_contains(G, x, y):
            failures.append((x, y))
    return SelectionCheck(trials, tuple(failures))


def _fmt(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"
