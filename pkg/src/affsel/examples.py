"""Named instances and seeded random families."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import InputError, UnsupportedSizeError
from .linalg import Vector, as_vector
from .lp import LE, LinearProgram, lp_solve
from .multifunction import GraphMultifunction, SampledMultifunction
from .polytope import Simplex, VPolytope

NORMS = ("sup", "one")


def olsen() -> GraphMultifunction:
    """Convex multifunction on the square |x| + |y| <= 1 with interval values
    [|y|, 1 - |x|] and no affine selection."""
    return GraphMultifunction.from_vertices(
        2, 1, [(-1, 0, 0), (1, 0, 0), (0, -1, 1), (0, 1, 1)]
    )


@dataclass(frozen=True)
class HahnBanachSpec:
    """Norm-preserving extensions from a subspace X of (R^k, norm).

    ``functional_samples`` encode functionals on X by their values on
    ``subspace_basis``.
    """

    k: int
    norm: str
    subspace_basis: tuple[Vector, ...]
    functional_samples: tuple[Vector, ...]

    def __post_init__(self):
        basis = tuple(as_vector(b) for b in self.subspace_basis)
        samples = tuple(as_vector(s) for s in self.functional_samples)
        if self.norm not in NORMS:
            raise InputError(f"norm must be one of {NORMS}, got {self.norm!r}")
        if any(len(b) != self.k for b in basis):
            raise InputError(f"basis vectors must have length {self.k}")
        if not 1 <= len(basis) < self.k:
            raise InputError("need 1 <= dim X < k")
        if linalg.rank(basis) != len(basis):
            raise InputError("subspace basis is linearly dependent")
        if any(len(s) != len(basis) for s in samples):
            raise InputError(f"functional samples must have length {len(basis)}")
        object.__setattr__(self, "subspace_basis", basis)
        object.__setattr__(self, "functional_samples", samples)


def default_hahn_banach_spec() -> HahnBanachSpec:
    return HahnBanachSpec(2, "sup", ((1, 1),), ((-1,), (0,), (1,)))


def _sign_patterns(k: int):
    return itertools.product((1, -1), repeat=k)


def _unit_ball_rows(norm: str, k: int, radius: Fraction) -> list[tuple[Vector, Fraction]]:
    """Inequalities ``<a, z> <= radius`` describing the radius-ball of ``norm``."""
    if norm == "sup":
        return [
            (tuple(Fraction(s * int(i == j)) for j in range(k)), radius)
            for i in range(k)
            for s in (1, -1)
        ]
    return [(tuple(Fraction(s) for s in signs), radius) for signs in _sign_patterns(k)]


def restricted_norm(spec: HahnBanachSpec, f: Sequence[Fraction]) -> Fraction:
    """Norm of ``f`` on X: max f(z) over the unit ball of Y intersected with X."""
    basis = spec.subspace_basis
    d = len(basis)
    # z = sum s_i b_i; one row per facet of the ball in the s coordinates.
    rows = []
    for a, r in _unit_ball_rows(spec.norm, spec.k, Fraction(1)):
        rows.append((tuple(linalg.dot(a, b) for b in basis), LE, r))
    out = lp_solve(LinearProgram(d, rows, tuple(f), "maximize"))
    return out.optimum


def hahn_banach(spec: HahnBanachSpec) -> SampledMultifunction:
    """``F(f) = {g : g|X = f, ||g||_* = ||f||}`` at each sampled ``f``.

    The dual norm of sup is the one-norm and vice versa; values are
    enumerated exactly as polytopes, which limits ``k`` to 3.
    """
    if spec.k > 3:
        raise UnsupportedSizeError(f"k = {spec.k} > 3 is not supported")
    dual = "one" if spec.norm == "sup" else "sup"
    samples = []
    for f in spec.functional_samples:
        radius = restricted_norm(spec, f)
        eqs = [(b, c) for b, c in zip(spec.subspace_basis, f)]
        ineqs = _unit_ball_rows(dual, spec.k, radius)
        verts = _enumerate_vertices(spec.k, eqs, ineqs)
        if not verts:
            raise RuntimeError(f"no norm-preserving extension found for {f}")
        samples.append((f, VPolytope(spec.k, tuple(verts))))
    return SampledMultifunction(len(spec.subspace_basis), spec.k, tuple(samples))


def _enumerate_vertices(k, eqs, ineqs) -> list[Vector]:
    """Vertices of {g : <b, g> = c for eqs, <a, g> <= r for ineqs} by brute force."""
    need = k - len(eqs)
    found = set()
    for pick in itertools.combinations(range(len(ineqs)), need):
        rows = [b for b, _ in eqs] + [ineqs[i][0] for i in pick]
        rhs = [c for _, c in eqs] + [ineqs[i][1] for i in pick]
        g = linalg.solve(rows, rhs)
        if g is None:
            continue
        if all(linalg.dot(a, g) <= r for a, r in ineqs):
            found.add(g)
    # Descending lexicographic order keeps vertex lists canonical.
    return sorted(found, reverse=True)


def random_rational(rng: random.Random, low: int = -1, high: int = 1) -> Fraction:
    q = rng.choice((1, 2, 3, 4))
    return Fraction(rng.randint(low * q, high * q), q)


def random_simplex(n: int, seed: int) -> Simplex:
    rng = random.Random(seed)
    while True:
        verts = [tuple(random_rational(rng) for _ in range(n)) for _ in range(n + 1)]
        if _affine_rank(verts) == n:
            return Simplex(tuple(verts))


def _affine_rank(points: Sequence[Vector]) -> int:
    base = points[0]
    return linalg.rank([tuple(a - b for a, b in zip(p, base)) for p in points[1:]])


def random_convex_graph(
    n: int,
    m: int,
    num_vertices: int,
    seed: int,
    domain_simplex: Simplex | None = None,
) -> GraphMultifunction:
    """Seeded random graph polytope with vertices in [-1, 1]^(n+m).

    With ``domain_simplex`` every graph vertex sits over a simplex vertex
    and each simplex vertex is used, so the domain is exactly that simplex.
    Otherwise the draw is repeated until the domain is full-dimensional.
    """
    if num_vertices < n + 1:
        raise InputError(f"need at least n + 1 = {n + 1} vertices")
    rng = random.Random(seed)
    if domain_simplex is not None:
        if domain_simplex.dim != n:
            raise InputError(f"simplex has dimension {domain_simplex.dim}, expected {n}")
        svs = domain_simplex.vertices
        xs = list(svs) + [rng.choice(svs) for _ in range(num_vertices - n - 1)]
        verts = [x + tuple(random_rational(rng) for _ in range(m)) for x in xs]
        return GraphMultifunction.from_vertices(n, m, verts)
    while True:
        verts = [
            tuple(random_rational(rng) for _ in range(n + m)) for _ in range(num_vertices)
        ]
        if _affine_rank([v[:n] for v in verts]) == n:
            return GraphMultifunction.from_vertices(n, m, verts)
