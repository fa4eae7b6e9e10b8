"""Affine selections of finite-dimensional convex multifunctions, in exact arithmetic."""

from .errors import (
    AffselError,
    DomainError,
    GeometryError,
    InputError,
    NotInteriorError,
    UnsupportedSizeError,
)
from .examples import HahnBanachSpec, hahn_banach, olsen, random_convex_graph, random_simplex
from .lp import Constraint, LinearProgram, LpOutcome, lp_solve, verify_certificate
from .multifunction import (
    AuditReport,
    GraphMultifunction,
    SampledMultifunction,
    Violation,
    audit_convexity,
    audit_intersection,
    canonical_fiber_point,
    domain_vertices,
    fiber_contains,
    fiber_extrema,
    sample_graph,
)
from .polytope import (
    AffineMap,
    Simplex,
    VPolytope,
    affine_interpolate,
    barycentric,
    contains_polytope,
    membership,
    minkowski_combine,
)
from .selection import (
    LocalSelection,
    SelectionCheck,
    SelectionOutcome,
    global_selection,
    interval_selection_1d,
    local_selection,
    sandwich,
    verify_selection,
)

__version__ = "0.1.0"
