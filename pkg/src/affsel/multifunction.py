"""Graph-polytope and sampled multifunctions, and the two audits.

A :class:`GraphMultifunction` is convex by construction: ``F(x)`` is the
fiber ``{y : (x, y) in conv(graph)}`` and the graph is a polytope.  A
:class:`SampledMultifunction` is just data; whether it is convex is a
question for :func:`audit_convexity`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InputError
from .linalg import Vector, as_vector
from .lp import EQ, LinearProgram, lp_solve
from .polytope import VPolytope, contains_polytope, hull_lp, minkowski_combine


@dataclass(frozen=True)
class GraphMultifunction:
    n: int
    m: int
    graph: VPolytope

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise InputError("dimensions n and m must be positive")
        if self.graph.dim != self.n + self.m:
            raise InputError(
                f"graph has dimension {self.graph.dim}, expected n + m = {self.n + self.m}"
            )

    @classmethod
    def from_vertices(cls, n: int, m: int, vertices: Sequence[Sequence]) -> GraphMultifunction:
        return cls(n, m, VPolytope(n + m, tuple(vertices)))


@dataclass(frozen=True)
class SampledMultifunction:
    n: int
    m: int
    samples: tuple[tuple[Vector, VPolytope], ...]
    inner_approximation: bool = False

    def __post_init__(self):
        samples = tuple((as_vector(p), v) for p, v in self.samples)
        seen = set()
        for idx, (p, v) in enumerate(samples):
            if len(p) != self.n:
                raise InputError(f"sample {idx}: point has length {len(p)}, expected {self.n}")
            if not isinstance(v, VPolytope):
                raise InputError(f"sample {idx}: value is not a polytope")
            if v.dim != self.m:
                raise InputError(f"sample {idx}: value has dimension {v.dim}, expected {self.m}")
            if p in seen:
                raise InputError(f"sample {idx}: duplicate point {p}")
            seen.add(p)
        object.__setattr__(self, "samples", samples)

    @property
    def points(self) -> list[Vector]:
        return [p for p, _ in self.samples]

    @property
    def values(self) -> list[VPolytope]:
        return [v for _, v in self.samples]


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    k: int
    t: Fraction
    witness: Vector


@dataclass(frozen=True)
class AuditReport:
    """Result of checking every sample triple where one point lies strictly
    between two others.

    For the convexity audit a witness is a vertex of the Minkowski
    combination outside the middle value.  For the intersection audit it is
    a direction ``u`` with ``<u, c> > <u, v>`` for every point ``c`` of the
    combination and ``v`` of the middle value.
    """

    kind: str
    checked_triples: int
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def domain_vertices(G: GraphMultifunction) -> list[Vector]:
    return [v[: G.n] for v in G.graph.vertices]


def distinct_domain_vertices(G: GraphMultifunction) -> list[Vector]:
    return list(dict.fromkeys(domain_vertices(G)))


def in_domain(G: GraphMultifunction, x: Sequence) -> bool:
    x = _check_len(x, G.n, "x")
    return lp_solve(hull_lp(domain_vertices(G), x)).status != "infeasible"


def _check_len(v: Sequence, n: int, name: str) -> Vector:
    v = as_vector(v)
    if len(v) != n:
        raise InputError(f"{name} has length {len(v)}, expected {n}")
    return v


def _fiber_lp(G, x, objective=None, sense="feasibility", fixed=()) -> LinearProgram:
    base = hull_lp(domain_vertices(G), x)
    rows = list(base.constraints)
    ys = [v[G.n :] for v in G.graph.vertices]
    for d, val in fixed:
        rows.append((tuple(y[d] for y in ys), EQ, val))
    obj = None
    if objective is not None:
        obj = tuple(sum((a * b for a, b in zip(objective, y)), Fraction(0)) for y in ys)
    return LinearProgram(base.num_vars, rows, obj, sense, base.nonnegative)


def _combine(G: GraphMultifunction, weights: Sequence[Fraction]) -> Vector:
    out = [Fraction(0)] * G.m
    for w, v in zip(weights, G.graph.vertices):
        if w:
            for d in range(G.m):
                out[d] += w * v[G.n + d]
    return tuple(out)


def fiber_contains(G: GraphMultifunction, x: Sequence, y: Sequence) -> bool:
    x = _check_len(x, G.n, "x")
    y = _check_len(y, G.m, "y")
    return lp_solve(hull_lp(G.graph.vertices, x + y)).status != "infeasible"


def _fiber_optimum(G, x, direction, sense, fixed=()):
    out = lp_solve(_fiber_lp(G, x, direction, sense, fixed))
    if out.status == "infeasible":
        return None
    return out.optimum, _combine(G, out.solution)


def fiber_extrema(
    G: GraphMultifunction, x: Sequence, direction: Sequence
) -> tuple[Fraction, Fraction] | None:
    """Min and max of ``<direction, y>`` over ``F(x)``; None if ``x`` is not in D."""
    x = _check_len(x, G.n, "x")
    direction = _check_len(direction, G.m, "direction")
    lo = _fiber_optimum(G, x, direction, "minimize")
    if lo is None:
        return None
    hi = _fiber_optimum(G, x, direction, "maximize")
    return lo[0], hi[0]


def canonical_fiber_point(G: GraphMultifunction, x: Sequence) -> Vector | None:
    """Lexicographically smallest point of ``F(x)``; None if ``x`` is not in D."""
    x = _check_len(x, G.n, "x")
    fixed: list[tuple[int, Fraction]] = []
    for d in range(G.m):
        e = tuple(Fraction(int(i == d)) for i in range(G.m))
        res = _fiber_optimum(G, x, e, "minimize", fixed)
        if res is None:
            return None
        fixed.append((d, res[0]))
    return tuple(v for _, v in fixed)


def segment_parameter(a: Vector, b: Vector, c: Vector) -> Fraction | None:
    """``t`` in (0, 1) with ``c = t*a + (1-t)*b``, or None."""
    d = next(i for i in range(len(a)) if a[i] != b[i])
    t = (c[d] - b[d]) / (a[d] - b[d])
    if not 0 < t < 1:
        return None
    if any(c[i] != t * a[i] + (1 - t) * b[i] for i in range(len(a))):
        return None
    return t


def _triples(M: SampledMultifunction):
    pts = M.points
    for i in range(len(pts)):
        for j in range(len(pts)):
            if i == j:
                continue
            for k in range(len(pts)):
                if k == i or k == j:
                    continue
                t = segment_parameter(pts[i], pts[j], pts[k])
                if t is not None:
                    yield i, j, k, t


def audit_convexity(M: SampledMultifunction) -> AuditReport:
    vals = M.values
    checked = 0
    violations = []
    for i, j, k, t in _triples(M):
        checked += 1
        res = contains_polytope(minkowski_combine(t, vals[i], vals[j]), vals[k])
        if not res:
            violations.append(Violation(i, j, k, t, res.outside_vertex))
    return AuditReport("convexity", checked, tuple(violations))


def separate(P: VPolytope, Q: VPolytope) -> Vector | None:
    """None if the hulls meet, else a direction ``u`` with ``<u,p> > <u,q>``."""
    a, b, m = len(P.vertices), len(Q.vertices), P.dim
    rows = [
        ((Fraction(1),) * a + (Fraction(0),) * b, EQ, Fraction(1)),
        ((Fraction(0),) * a + (Fraction(1),) * b, EQ, Fraction(1)),
    ]
    for d in range(m):
        row = tuple(p[d] for p in P.vertices) + tuple(-q[d] for q in Q.vertices)
        rows.append((row, EQ, Fraction(0)))
    out = lp_solve(LinearProgram(a + b, rows, nonnegative=frozenset(range(a + b))))
    if out.status != "infeasible":
        return None
    return out.farkas[2:]


def audit_intersection(M: SampledMultifunction) -> AuditReport:
    vals = M.values
    checked = 0
    violations = []
    for i, j, k, t in _triples(M):
        checked += 1
        u = separate(minkowski_combine(t, vals[i], vals[j]), vals[k])
        if u is not None:
            violations.append(Violation(i, j, k, t, u))
    return AuditReport("intersection", checked, tuple(violations))


def sample_graph(G: GraphMultifunction, points: Sequence[Sequence]) -> SampledMultifunction:
    """Tabulate ``F`` at ``points``.

    With ``m == 1`` each value is the exact fiber interval.  Otherwise each
    value is spanned by the canonical fiber point and the fiber's extreme
    points along the 2m coordinate directions, an inner approximation.
    """
    samples = []
    for p in points:
        p = _check_len(p, G.n, "point")
        if G.m == 1:
            ext = fiber_extrema(G, p, (1,))
            if ext is None:
                raise DomainError(f"point {_fmt(p)} is outside the domain")
            lo, hi = ext
            verts = [(lo,)] if lo == hi else [(lo,), (hi,)]
        else:
            base = canonical_fiber_point(G, p)
            if base is None:
                raise DomainError(f"point {_fmt(p)} is outside the domain")
            verts = [base]
            for d in range(G.m):
                e = tuple(Fraction(int(i == d)) for i in range(G.m))
                for sense in ("minimize", "maximize"):
                    verts.append(_fiber_optimum(G, p, e, sense)[1])
            verts = list(dict.fromkeys(verts))
        samples.append((p, VPolytope(G.m, tuple(verts))))
    return SampledMultifunction(G.n, G.m, tuple(samples), inner_approximation=G.m > 1)


def _fmt(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"
