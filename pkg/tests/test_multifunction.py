import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affsel.errors import DomainError, InputError
from affsel.examples import random_convex_graph
from affsel.multifunction import (
    GraphMultifunction,
    SampledMultifunction,
    audit_convexity,
    audit_intersection,
    canonical_fiber_point,
    domain_vertices,
    fiber_contains,
    fiber_extrema,
    sample_graph,
    segment_parameter,
)
from affsel.polytope import VPolytope, contains_polytope, minkowski_combine
from affsel.selection import random_point
from oracles import olsen_fiber


def sampled(pairs, m=1):
    return SampledMultifunction(
        len(pairs[0][0]), m, tuple((p, VPolytope.of(v)) for p, v in pairs)
    )


BROKEN = sampled([((0,), [(0,)]), ((1,), [(1,)]), ((F(1, 2),), [(0,)])])
AFFINE_DATA = sampled([((0,), [(0,)]), ((1,), [(1,)]), ((F(1, 2),), [(F(1, 2),)])])


def test_domain_vertices(olsen_graph):
    assert domain_vertices(olsen_graph) == [(-1, 0), (1, 0), (0, -1), (0, 1)]
    line = GraphMultifunction.from_vertices(2, 1, [(0, 0, 0), (1, 0, 1), (0, 1, 2)])
    assert domain_vertices(line) == [(0, 0), (1, 0), (0, 1)]
    point = GraphMultifunction.from_vertices(1, 2, [(3, 4, 5)])
    assert domain_vertices(point) == [(3,)]


def test_fiber_contains(olsen_graph):
    assert olsen_fiber(0, 0)[0] <= F(1, 2) <= olsen_fiber(0, 0)[1]
    assert fiber_contains(olsen_graph, (0, 0), (F(1, 2),))
    assert olsen_fiber(1, 0) == (0, 0)
    assert not fiber_contains(olsen_graph, (1, 0), (F(1, 2),))
    for v in olsen_graph.graph.vertices:
        assert fiber_contains(olsen_graph, v[:2], v[2:])
    with pytest.raises(InputError):
        fiber_contains(olsen_graph, (0,), (0,))


def test_fiber_extrema(olsen_graph):
    assert fiber_extrema(olsen_graph, (0, 0), (1,)) == olsen_fiber(0, 0) == (0, 1)
    assert fiber_extrema(olsen_graph, (F(1, 2), F(1, 4)), (1,)) == olsen_fiber(F(1, 2), F(1, 4))
    assert fiber_extrema(olsen_graph, (2, 0), (1,)) is None


def test_canonical_fiber_point(olsen_graph):
    assert canonical_fiber_point(olsen_graph, (0, F(1, 2))) == (olsen_fiber(0, F(1, 2))[0],)
    assert canonical_fiber_point(olsen_graph, (1, 0)) == (0,)
    assert canonical_fiber_point(olsen_graph, (5, 5)) is None
    # singleton-valued affine graph y = (x1 + 2 x2, -x1)
    G = GraphMultifunction.from_vertices(
        2, 2, [(0, 0, 0, 0), (1, 0, 1, -1), (0, 1, 2, 0)]
    )
    assert canonical_fiber_point(G, (F(1, 4), F(1, 4))) == (F(3, 4), F(-1, 4))


def test_lexicographic_order_in_two_dimensions():
    # fiber over 0 is the square [0,1]^2 plus a point (0, -1): lexmin is (0, -1)
    G = GraphMultifunction.from_vertices(
        1, 2, [(0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (0, 0, -1), (1, 0, 0)]
    )
    assert canonical_fiber_point(G, (0,)) == (0, -1)


def test_segment_parameter():
    a, b = (F(0), F(0)), (F(2), F(2))
    assert segment_parameter(a, b, (F(1), F(1))) == F(1, 2)
    assert segment_parameter(a, b, (F(1), F(0))) is None
    assert segment_parameter(a, b, a) is None


def test_audit_convexity_examples():
    ok = audit_convexity(AFFINE_DATA)
    assert ok.passed and ok.checked_triples == 2
    bad = audit_convexity(BROKEN)
    assert not bad.passed
    assert [(v.i, v.j, v.k, v.t, v.witness) for v in bad.violations] == [
        (0, 1, 2, F(1, 2), (F(1, 2),)),
        (1, 0, 2, F(1, 2), (F(1, 2),)),
    ]


def test_audit_intersection_examples(olsen_graph):
    M = sample_graph(olsen_graph, [(1, 0), (-1, 0), (0, 0)])
    assert audit_intersection(M).passed
    bad = audit_intersection(BROKEN)
    assert not bad.passed
    v = bad.violations[0]
    assert (v.i, v.j, v.k, v.t) == (0, 1, 2, F(1, 2))
    # witness separates: <u, 1/2> > <u, 0>
    assert v.witness[0] * F(1, 2) > 0


def test_sample_graph(olsen_graph):
    M = sample_graph(olsen_graph, [(0, 0)])
    assert M.samples[0][1].vertices == ((0,), (1,))
    M = sample_graph(olsen_graph, [(1, 0), (0, 1)])
    assert [v.vertices for v in M.values] == [((0,),), ((1,),)]
    assert not M.inner_approximation
    with pytest.raises(DomainError, match=r"\(2, 0\)"):
        sample_graph(olsen_graph, [(2, 0)])


def test_sample_graph_vector_values_are_flagged():
    G = random_convex_graph(1, 2, 5, seed=3)
    M = sample_graph(G, [domain_vertices(G)[0]])
    assert M.inner_approximation
    for y in M.values[0].vertices:
        assert fiber_contains(G, M.points[0], y)


def test_sampled_invariants():
    with pytest.raises(InputError):
        sampled([((0,), [(0,)]), ((0,), [(1,)])])
    with pytest.raises(InputError):
        VPolytope(1, ())


# -- properties ---------------------------------------------------------------

graphs = st.builds(
    lambda n, m, extra, seed: random_convex_graph(n, m, n + 1 + extra, seed),
    st.integers(1, 2),
    st.integers(1, 2),
    st.integers(0, 4),
    st.integers(0, 10**6),
)


@settings(max_examples=30, deadline=None)
@given(graphs, st.integers(0, 10**6))
def test_graph_convexity_through_canonical_points(G, seed):
    rng = random.Random(seed)
    dom = domain_vertices(G)
    x, y = random_point(dom, rng), random_point(dom, rng)
    t = F(rng.randint(0, 10), 10)
    u, v = canonical_fiber_point(G, x), canonical_fiber_point(G, y)
    mid_x = tuple(t * a + (1 - t) * b for a, b in zip(x, y))
    mid_y = tuple(t * a + (1 - t) * b for a, b in zip(u, v))
    assert fiber_contains(G, mid_x, mid_y)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_interval_fibers_match_membership(seed):
    rng = random.Random(seed)
    G = random_convex_graph(1, 1, rng.randint(2, 5), seed)
    x = random_point(domain_vertices(G), rng)
    lo, hi = fiber_extrema(G, x, (1,))
    assert lo <= hi
    for _ in range(50):
        y = F(rng.randint(-30, 30), 20)
        assert fiber_contains(G, x, (y,)) == (lo <= y <= hi)


def test_olsen_fiber_formula(olsen_graph):
    rng = random.Random(11)
    for _ in range(100):
        while True:
            x, y = F(rng.randint(-12, 12), 12), F(rng.randint(-12, 12), 12)
            if abs(x) + abs(y) <= 1:
                break
        assert fiber_extrema(olsen_graph, (x, y), (1,)) == olsen_fiber(x, y)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_sampled_interval_graphs_are_convex(seed):
    rng = random.Random(seed)
    G = random_convex_graph(1, 1, rng.randint(2, 5), seed)
    dom = domain_vertices(G)
    pts = list(dict.fromkeys(random_point(dom, rng) for _ in range(6)))
    M = sample_graph(G, pts)
    conv, inter = audit_convexity(M), audit_intersection(M)
    assert conv.passed
    assert inter.passed and inter.checked_triples == conv.checked_triples


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.fractions(min_value=-2, max_value=2, max_denominator=4),
            st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=4), min_size=1, max_size=2),
        ),
        min_size=3,
        max_size=5,
        unique_by=lambda s: s[0],
    )
)
def test_convexity_implies_intersection(data):
    M = sampled([((p,), [(v,) for v in vals]) for p, vals in data])
    conv, inter = audit_convexity(M), audit_intersection(M)
    assert conv.checked_triples == inter.checked_triples
    if conv.passed:
        assert inter.passed
    for v in conv.violations:  # witnesses reproduce
        vals = M.values
        res = contains_polytope(minkowski_combine(v.t, vals[v.i], vals[v.j]), vals[v.k])
        assert not res and res.outside_vertex == v.witness
