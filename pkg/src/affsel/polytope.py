"""Polytopes in vertex representation, simplices and affine maps.

Every geometric question is answered with an LP over convex-combination
weights; no facet description is ever computed.  Vertex lists may contain
redundant points and duplicates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import GeometryError, InputError
from .linalg import Vector, as_vector
from .lp import EQ, LinearProgram, lp_solve


@dataclass(frozen=True)
class VPolytope:
    dim: int
    vertices: tuple[Vector, ...]

    def __post_init__(self):
        verts = tuple(as_vector(v) for v in self.vertices)
        if not verts:
            raise InputError("a polytope needs at least one vertex")
        for v in verts:
            if len(v) != self.dim:
                raise InputError(f"vertex {v} does not have dimension {self.dim}")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def of(cls, points: Sequence[Sequence]) -> VPolytope:
        points = [as_vector(p) for p in points]
        if not points:
            raise InputError("a polytope needs at least one vertex")
        return cls(len(points[0]), tuple(points))

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class AffineMap:
    """``x -> matrix @ x + offset`` from R^n to R^m."""

    n: int
    m: int
    matrix: tuple[Vector, ...]
    offset: Vector

    def __post_init__(self):
        matrix = tuple(as_vector(r) for r in self.matrix)
        offset = as_vector(self.offset)
        if len(matrix) != self.m or any(len(r) != self.n for r in matrix):
            raise InputError(f"matrix must be {self.m}x{self.n}")
        if len(offset) != self.m:
            raise InputError(f"offset must have length {self.m}")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "offset", offset)

    @classmethod
    def constant(cls, n: int, value: Sequence) -> AffineMap:
        value = as_vector(value)
        return cls(n, len(value), tuple((Fraction(0),) * n for _ in value), value)

    def __call__(self, x: Sequence) -> Vector:
        x = as_vector(x)
        if len(x) != self.n:
            raise InputError(f"point has length {len(x)}, expected {self.n}")
        return tuple(linalg.dot(row, x) + b for row, b in zip(self.matrix, self.offset))

    apply = __call__


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[Vector, ...]

    def __post_init__(self):
        verts = tuple(as_vector(v) for v in self.vertices)
        if not verts:
            raise GeometryError("a simplex needs vertices")
        n = len(verts[0])
        if len(verts) != n + 1 or any(len(v) != n for v in verts):
            raise GeometryError(f"an {n}-simplex needs {n + 1} vertices of length {n}")
        object.__setattr__(self, "vertices", verts)
        # Columns [a_i; 1]; invertible iff the vertices are affinely independent.
        lifted = [[v[r] for v in verts] for r in range(n)] + [[Fraction(1)] * (n + 1)]
        inv = linalg.inverse(lifted)
        if inv is None:
            raise GeometryError("simplex vertices are affinely dependent")
        object.__setattr__(self, "_inverse", inv)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class Membership:
    member: bool
    weights: Vector | None = None

    def __bool__(self) -> bool:
        return self.member


@dataclass(frozen=True)
class Containment:
    contained: bool
    outside_vertex: Vector | None = None

    def __bool__(self) -> bool:
        return self.contained


def hull_lp(points: Sequence[Vector], target: Sequence[Fraction]) -> LinearProgram:
    """Feasibility LP for ``target`` as a convex combination of ``points``."""
    k = len(points)
    rows = [((Fraction(1),) * k, EQ, Fraction(1))]
    for d, t in enumerate(target):
        rows.append((tuple(p[d] for p in points), EQ, t))
    return LinearProgram(k, rows, nonnegative=frozenset(range(k)))


def membership(p: Sequence, P: VPolytope) -> Membership:
    p = as_vector(p)
    if len(p) != P.dim:
        raise InputError(f"point has length {len(p)}, polytope has dimension {P.dim}")
    out = lp_solve(hull_lp(P.vertices, p))
    if out.status == "infeasible":
        return Membership(False)
    return Membership(True, out.solution)


def minkowski_combine(t, P: VPolytope, Q: VPolytope) -> VPolytope:
    """All cross sums ``t*p + (1-t)*q``; the hull is ``tP + (1-t)Q``."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise InputError(f"t = {t} is outside [0, 1]")
    if P.dim != Q.dim:
        raise InputError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    s = 1 - t
    return VPolytope(
        P.dim,
        tuple(
            tuple(t * a + s * b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices
        ),
    )


def barycentric(S: Simplex, x: Sequence) -> Vector:
    x = as_vector(x)
    if len(x) != S.dim:
        raise InputError(f"point has length {len(x)}, simplex has dimension {S.dim}")
    return linalg.matvec(S._inverse, x + (Fraction(1),))


def affine_interpolate(S: Simplex, values: Sequence[Sequence]) -> AffineMap:
    """The unique affine map taking vertex ``i`` of ``S`` to ``values[i]``."""
    values = [as_vector(v) for v in values]
    n = S.dim
    if len(values) != n + 1:
        raise InputError(f"need {n + 1} values, got {len(values)}")
    m = len(values[0])
    if any(len(v) != m for v in values):
        raise InputError("values must share one length")
    # f(x) = Y @ inv @ [x; 1] with Y the m x (n+1) matrix of values.
    inv = S._inverse
    combined = [
        [sum((values[i][r] * inv[i][c] for i in range(n + 1)), Fraction(0)) for c in range(n + 1)]
        for r in range(m)
    ]
    return AffineMap(n, m, tuple(tuple(row[:n]) for row in combined), tuple(row[n] for row in combined))


def contains_polytope(P: VPolytope, Q: VPolytope) -> Containment:
    """Whether conv(P) is inside conv(Q); testing P's vertices suffices."""
    if P.dim != Q.dim:
        raise InputError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    seen: set[Vector] = set()
    for v in P.vertices:
        if v in seen:
            continue
        seen.add(v)
        if not membership(v, Q):
            return Containment(False, v)
    return Containment(True)
