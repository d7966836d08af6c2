import pytest
from hypothesis import given, settings, strategies as st

from vcvis.generators import random_simple, random_staircase
from vcvis.geometry import Location, Point, PointOutsidePolygonError, point_in_polygon, triangulate
from vcvis.visibility import (
    Metric,
    geodesic,
    is_xy_monotone,
    l1_visible,
    l1_visible_many,
    l2_visibility_polygon,
    l2_visible,
    visible,
    windows,
)

from conftest import dijkstra_geodesic, path_length, random_interior_point, rng_for

P = Point.of


class TestU4:
    def test_l2_blocked_by_notch(self, u4):
        assert not l2_visible(u4, P("1/2", 3), P("7/2", 3))

    def test_l2_exits_left_arm(self, u4):
        assert not l2_visible(u4, P("1/2", 3), P(2, "1/2"))

    def test_l2_same_arm(self, u4):
        assert l2_visible(u4, P("1/2", 3), P("1/2", "1/2"))

    def test_geodesic_across_notch(self, u4):
        assert geodesic(u4, P("1/2", 3), P("7/2", 3)) == [P("1/2", 3), P(1, 1), P(3, 1), P("7/2", 3)]

    def test_geodesic_into_corridor(self, u4):
        assert geodesic(u4, P("1/2", 3), P(2, "1/2")) == [P("1/2", 3), P(1, 1), P(2, "1/2")]

    def test_l1_examples(self, u4):
        assert l1_visible(u4, P("1/2", 3), P(2, "1/2"))
        assert not l1_visible(u4, P("1/2", 3), P("7/2", 3))

    def test_window(self, u4):
        (w,) = windows(u4, P("1/2", 3))
        assert set(w) == {P(1, 1), P("5/4", 0)}

    def test_visibility_polygon_matches_l2_visible(self, u4):
        p = P("1/2", 3)
        vp = l2_visibility_polygon(u4, p)
        rng = rng_for("vp")
        for _ in range(1000):
            q = random_interior_point(u4, rng)
            inside = point_in_polygon(vp, q) is not Location.EXTERIOR
            assert inside == l2_visible(u4, p, q)

    def test_outside_point_rejected(self, u4):
        with pytest.raises(PointOutsidePolygonError):
            l1_visible(u4, P(2, 3), P("1/2", "1/2"))

    def test_metric_parse(self):
        assert Metric.parse("L1") is Metric.L1
        with pytest.raises(ValueError):
            Metric.parse("l3")


def test_boundary_points_are_allowed(u4):
    assert visible(u4, P(1, 1), P(3, 1), "l2")
    assert visible(u4, P(0, 4), P(0, 0), "l1")


def test_monotone_helper():
    assert is_xy_monotone([P(0, 0), P(1, 0), P(2, 3)])
    assert not is_xy_monotone([P(0, 0), P(1, -1), P(2, 3)])


def _scene(seed):
    rng = rng_for("vis", seed)
    if seed % 2:
        poly = random_simple(rng, vertices=8 + seed % 11)
    else:
        poly = random_staircase(rng, size=6 + seed % 6, spikes=3 + seed % 8)
    return poly, random_interior_point(poly, rng), random_interior_point(poly, rng)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**6))
def test_geodesic_matches_dijkstra(seed):
    poly, p, q = _scene(seed)
    path = geodesic(poly, p, q)
    oracle, length = dijkstra_geodesic(poly, p, q)
    assert path[0] == p and path[-1] == q
    assert abs(path_length(path) - length) < 1e-30
    assert path == oracle


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_l2_implies_l1(seed):
    poly, p, q = _scene(seed)
    if l2_visible(poly, p, q):
        assert l1_visible(poly, p, q)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_l1_symmetric_and_batched(seed):
    poly, p, q = _scene(seed)
    assert l1_visible(poly, p, q) == l1_visible(poly, q, p)
    assert l1_visible_many(poly, p, [q, p]) == [l1_visible(poly, p, q), True]


def _diagonal_points(poly, rng):
    """Interior points lying exactly on diagonals of the triangulation."""
    v = poly.vertices
    n = len(v)
    diagonals = {
        tuple(sorted((a, b)))
        for tri in triangulate(poly)
        for a, b in zip(tri, tri[1:] + tri[:1])
        if (a - b) % n not in (1, n - 1)
    }
    out = []
    for a, b in sorted(diagonals):
        t = Point.of(f"{rng.randrange(1, 64)}/64", 0).x
        out.append(Point(v[a].x + t * (v[b].x - v[a].x), v[a].y + t * (v[b].y - v[a].y)))
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_geodesic_from_points_on_diagonals(seed):
    # an endpoint on a triangulation diagonal once made the funnel bend at a wrong vertex
    poly, p, _ = _scene(seed)
    rng = rng_for("diag", seed)
    ends = _diagonal_points(poly, rng)
    for q in rng.sample(ends, min(4, len(ends))):
        for a, b in ((p, q), (q, p)):
            oracle, _ = dijkstra_geodesic(poly, a, b)
            assert geodesic(poly, a, b) == oracle
        assert l1_visible_many(poly, q, [p]) == [l1_visible(poly, p, q)]
