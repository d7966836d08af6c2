"""L2 and L1 visibility inside a simple polygon.

L2: the closed segment between the two points stays in the closed polygon.
L1: the Euclidean shortest path between them is monotone in both x and y.
The shortest path is computed with the funnel algorithm over an ear-clipping
triangulation, which only ever needs orientation tests, so everything stays
exact.
"""

from __future__ import annotations

import enum
from collections import deque
from functools import lru_cache

from .chords import ray_cast, split_by_segments, strictly_inside_direction
from .geometry import (
    Location,
    Point,
    PointOutsidePolygonError,
    Polygon,
    Segment,
    as_point,
    cross,
    on_segment,
    point_at,
    point_in_polygon,
    segment_intersection,
    segment_param,
    triangulate,
)


class Metric(enum.Enum):
    L1 = "l1"
    L2 = "l2"

    @classmethod
    def parse(cls, value) -> "Metric":
        if isinstance(value, Metric):
            return value
        return cls(str(value).lower())


class PointOnBoundaryError(ValueError):
    pass


def _require_inside(poly: Polygon, *points) -> None:
    for p in points:
        if point_in_polygon(poly, p) is Location.EXTERIOR:
            raise PointOutsidePolygonError(p)


def segment_inside(poly: Polygon, p, q) -> bool:
    """Closed segment ``pq`` inside the closed polygon (endpoints assumed inside)."""
    if p == q:
        return True
    ts = set()
    for e in poly.edges():
        hit = segment_intersection((p, q), e)
        if hit is None:
            continue
        if isinstance(hit, Segment):
            ts.add(segment_param(p, q, hit.a))
            ts.add(segment_param(p, q, hit.b))
        else:
            ts.add(segment_param(p, q, hit))
    if not ts:
        return True
    ts.add(0)
    ts.add(1)
    ordered = sorted(ts)
    for t0, t1 in zip(ordered, ordered[1:]):
        if point_in_polygon(poly, point_at(p, q, (t0 + t1) / 2)) is Location.EXTERIOR:
            return False
    return True


def l2_visible(poly: Polygon, p, q) -> bool:
    p, q = as_point(p), as_point(q)
    _require_inside(poly, p, q)
    return segment_inside(poly, p, q)


class _Mesh:
    """Triangulation of a polygon plus its dual tree."""

    def __init__(self, poly: Polygon):
        self.poly = poly
        self.tris = triangulate(poly)
        owner: dict[tuple[int, int], list[int]] = {}
        for t, (a, b, c) in enumerate(self.tris):
            for u, v in ((a, b), (b, c), (c, a)):
                owner.setdefault((min(u, v), max(u, v)), []).append(t)
        self.adj: list[list[tuple[int, int, int]]] = [[] for _ in self.tris]
        for t, (a, b, c) in enumerate(self.tris):
            for u, v in ((a, b), (b, c), (c, a)):
                for s in owner[(min(u, v), max(u, v))]:
                    if s != t:
                        # (u, v) is counterclockwise as seen from t
                        self.adj[t].append((s, u, v))

        v = poly.vertices
        self._boxes = []
        for a, b, c in self.tris:
            xs, ys = (v[a].x, v[b].x, v[c].x), (v[a].y, v[b].y, v[c].y)
            self._boxes.append((min(xs), min(ys), max(xs), max(ys)))

    def locate(self, p) -> int:
        v = self.poly.vertices
        px, py = p[0], p[1]
        for t, (a, b, c) in enumerate(self.tris):
            x0, y0, x1, y1 = self._boxes[t]
            if px < x0 or px > x1 or py < y0 or py > y1:
                continue
            if cross(v[a], v[b], p) >= 0 and cross(v[b], v[c], p) >= 0 and cross(v[c], v[a], p) >= 0:
                return t
        raise PointOutsidePolygonError(p)

    @lru_cache(maxsize=None)
    def parents(self, root: int) -> tuple:
        par: list = [None] * len(self.tris)
        par[root] = (root, -1, -1)
        queue = deque([root])
        while queue:
            t = queue.popleft()
            for s, u, v in self.adj[t]:
                if par[s] is None:
                    # edge (u, v) is counterclockwise in t; seen from s it is (v, u)
                    par[s] = (t, v, u)
                    queue.append(s)
        return tuple(par)

    def portals(self, src: int, dst: int) -> list[tuple[Point, Point]]:
        """Diagonals crossed walking from ``src`` to ``dst`` as (left, right) pairs."""
        par = self.parents(dst)
        v = self.poly.vertices
        out = []
        t = src
        while t != dst:
            nxt, u, w = par[t]
            # (u, w) is counterclockwise in t: leaving t, w is on the left
            out.append((v[w], v[u]))
            t = nxt
        return out


@lru_cache(maxsize=512)
def _mesh(poly: Polygon) -> _Mesh:
    return _Mesh(poly)


def _simplify(path: list) -> list[Point]:
    pts: list[Point] = []
    for p in path:
        if pts and pts[-1] == p:
            continue
        pts.append(p)
    out: list[Point] = []
    for p in pts:
        while len(out) >= 2 and cross(out[-2], out[-1], p) == 0:
            a, b = out[-2], out[-1]
            # drop b only if it lies between a and p
            if (b.x - a.x) * (p.x - b.x) >= 0 and (b.y - a.y) * (p.y - b.y) >= 0:
                out.pop()
            else:
                break
        out.append(p)
    return out


def funnel(start, goal, portals) -> list[Point]:
    """String-pulling through a sequence of (left, right) portals."""
    gates = [(start, start)] + list(portals) + [(goal, goal)]
    path = [start]
    apex = left = right = start
    ai = li = ri = 0
    i = 1
    while i < len(gates):
        gl, gr = gates[i]
        if cross(apex, right, gr) >= 0:
            if apex == right or cross(apex, left, gr) < 0:
                right, ri = gr, i
            else:
                path.append(left)
                apex = left
                ai = li
                left = right = apex
                li = ri = ai
                i = ai + 1
                continue
        if cross(apex, left, gl) <= 0:
            if apex == left or cross(apex, right, gl) > 0:
                left, li = gl, i
            else:
                path.append(right)
                apex = right
                ai = ri
                left = right = apex
                li = ri = ai
                i = ai + 1
                continue
        i += 1
    path.append(goal)
    return _simplify(path)


def _pulled(mesh: _Mesh, p: Point, q: Point, tp: int, tq: int) -> list[Point]:
    if tp == tq:
        return [p, q]
    gates = mesh.portals(tp, tq)
    # an endpoint lying on a diagonal belongs to both triangles; the funnel
    # needs the apex strictly inside its first gate, so drop such diagonals
    lo, hi = 0, len(gates)
    while lo < hi and on_segment(p, *gates[lo]):
        lo += 1
    while hi > lo and on_segment(q, *gates[hi - 1]):
        hi -= 1
    if lo == hi:
        return [p, q]
    return funnel(p, q, gates[lo:hi])


def geodesic(poly: Polygon, p, q) -> list[Point]:
    """Euclidean shortest path from ``p`` to ``q`` inside the closed polygon."""
    p, q = as_point(p), as_point(q)
    _require_inside(poly, p, q)
    if p == q:
        return [p]
    mesh = _mesh(poly)
    return _pulled(mesh, p, q, mesh.locate(p), mesh.locate(q))


def path_length_sq_terms(path) -> list:
    """Squared lengths of the legs of a polyline (exact)."""
    return [(b.x - a.x) ** 2 + (b.y - a.y) ** 2 for a, b in zip(path, path[1:])]


def is_xy_monotone(path) -> bool:
    xs = [p[0] for p in path]
    ys = [p[1] for p in path]

    def mono(vals):
        steps = [b - a for a, b in zip(vals, vals[1:])]
        return all(s >= 0 for s in steps) or all(s <= 0 for s in steps)

    return mono(xs) and mono(ys)


def l1_visible(poly: Polygon, p, q) -> bool:
    return is_xy_monotone(geodesic(poly, p, q))


def l1_visible_many(poly: Polygon, q, targets) -> list[bool]:
    """L1 visibility from ``q`` to each target; all points must already be known to lie inside."""
    q = as_point(q)
    mesh = _mesh(poly)
    tq = mesh.locate(q)
    out = []
    for p in targets:
        p = as_point(p)
        if p == q:
            out.append(True)
            continue
        out.append(is_xy_monotone(_pulled(mesh, p, q, mesh.locate(p), tq)))
    return out


def visible(poly: Polygon, p, q, metric) -> bool:
    if Metric.parse(metric) is Metric.L1:
        return l1_visible(poly, p, q)
    return l2_visible(poly, p, q)


def windows(poly: Polygon, p) -> list[Segment]:
    """Window segments of the L2 visibility polygon of an interior point.

    A window starts at a reflex vertex seen from ``p`` where the ray from
    ``p`` grazes the boundary and continues into the interior, and ends at
    the next boundary point along that ray.
    """
    p = as_point(p)
    v = poly.vertices
    n = len(v)
    out = []
    for i in range(n):
        prev, r, nxt = v[i - 1], v[i], v[(i + 1) % n]
        if cross(prev, r, nxt) >= 0 or r == p:
            continue
        d = (r.x - p.x, r.y - p.y)
        if not strictly_inside_direction(prev, r, nxt, d):
            continue
        if not segment_inside(poly, p, r):
            continue
        hit = ray_cast(poly, r, d)
        if hit != r:
            out.append(Segment(r, hit))
    return out


def l2_visibility_polygon(poly: Polygon, p) -> Polygon:
    """Region of points L2-visible from the interior point ``p``."""
    p = as_point(p)
    loc = point_in_polygon(poly, p)
    if loc is Location.EXTERIOR:
        raise PointOutsidePolygonError(p)
    if loc is Location.BOUNDARY:
        raise PointOnBoundaryError(f"visibility polygons of boundary points are unsupported: {p}")
    for piece in split_by_segments(poly, windows(poly, p)):
        if point_in_polygon(piece, p) is Location.INTERIOR:
            return piece
    raise AssertionError("query point lies on a window")  # windows start beyond p
