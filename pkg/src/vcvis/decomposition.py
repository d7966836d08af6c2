"""Visibility-equivalence faces of a polygon with respect to a point set."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Optional

from .chords import split_by_segments
from .cuts import Direction, L1Cut, PointOnCutError, extract_cuts
from .geometry import (
    Location,
    Point,
    PointOutsidePolygonError,
    Polygon,
    Segment,
    as_point,
    cross,
    on_segment,
    point_in_polygon,
    polygon_area,
    rational,
    segment_param,
    triangulate,
)
from .visibility import Metric, l1_visible_many, visible, windows

Signature = frozenset


@dataclass(frozen=True)
class PointSet:
    points: tuple[Point, ...]
    labels: tuple[int, ...]

    @classmethod
    def of(cls, points, labels=None) -> "PointSet":
        pts = tuple(as_point(p) for p in points)
        labels = tuple(labels) if labels is not None else tuple(range(1, len(pts) + 1))
        if not pts:
            raise ValueError("a point set needs at least one point")
        if len(labels) != len(pts) or len(set(labels)) != len(labels):
            raise ValueError("labels must be unique, one per point")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        return cls(pts, labels)

    def __len__(self) -> int:
        return len(self.points)

    def items(self):
        return zip(self.labels, self.points)

    @property
    def full(self) -> Signature:
        return frozenset(self.labels)

    def validate(self, poly: Polygon) -> None:
        for p in self.points:
            if point_in_polygon(poly, p) is not Location.INTERIOR:
                raise PointOutsidePolygonError(p)

    def restrict(self, labels) -> "PointSet":
        keep = [(l, p) for l, p in self.items() if l in set(labels)]
        return PointSet(tuple(p for _, p in keep), tuple(l for l, _ in keep))


@dataclass(frozen=True)
class Chord:
    """A splitting segment, tagged with the cut (L1) or window (L2) it belongs to."""

    segment: Segment
    owner: int
    label: Optional[Direction] = None


@dataclass(frozen=True)
class Adjacency:
    faces: tuple[int, int]
    segment: Segment
    owner: Optional[int]
    label: Optional[Direction]


@dataclass(frozen=True)
class Face:
    boundary: Polygon
    representative: Point
    signature: Optional[Signature] = None
    cut_edges: tuple = ()


@dataclass(frozen=True)
class FaceDecomposition:
    polygon: Polygon
    metric: Metric
    faces: tuple[Face, ...]
    adjacency: tuple[Adjacency, ...]
    chords: tuple[Chord, ...]
    cuts: tuple[L1Cut, ...] = ()
    points: Optional[PointSet] = None
    _neighbors: dict = field(default=None, compare=False, repr=False)  # type: ignore[assignment]

    def neighbors(self, i: int) -> list[tuple[int, Adjacency]]:
        if self._neighbors is None:
            table: dict[int, list] = {}
            for adj in self.adjacency:
                a, b = adj.faces
                table.setdefault(a, []).append((b, adj))
                table.setdefault(b, []).append((a, adj))
            object.__setattr__(self, "_neighbors", table)
        return self._neighbors.get(i, [])

    @property
    def signatures(self) -> set:
        return {f.signature for f in self.faces if f.signature is not None}


def face_representative(piece: Polygon) -> Point:
    """Centroid of the largest triangle of the piece's triangulation."""
    v = piece.vertices
    best = None
    for a, b, c in triangulate(piece):
        area = cross(v[a], v[b], v[c])
        if best is None or area > best[0]:
            best = (area, (v[a], v[b], v[c]))
    a, b, c = best[1]
    return Point((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3)


def _line_key(a, b):
    if a.y == b.y:
        return ("h", a.y)
    if a.x == b.x:
        return ("v", a.x)
    dx, dy = b.x - a.x, b.y - a.y
    slope = dy / dx
    return ("s", slope, a.y - slope * a.x)


def _shared_segments(pieces: list[Polygon]):
    """Yield (i, j, segment) for every positive-length boundary overlap."""
    by_line: dict = {}
    for i, piece in enumerate(pieces):
        for a, b in piece.edges():
            by_line.setdefault(_line_key(a, b), []).append((i, a, b))
    for edges in by_line.values():
        for k in range(len(edges)):
            i, a, b = edges[k]
            for m in range(k + 1, len(edges)):
                j, c, d = edges[m]
                if i == j:
                    continue
                t0, t1 = sorted((segment_param(a, b, c), segment_param(a, b, d)))
                lo, hi = max(t0, 0), min(t1, 1)
                if lo < hi:
                    p = Point(a.x + (b.x - a.x) * lo, a.y + (b.y - a.y) * lo)
                    q = Point(a.x + (b.x - a.x) * hi, a.y + (b.y - a.y) * hi)
                    yield (min(i, j), max(i, j), Segment(p, q))


def _owner_of(seg: Segment, chords) -> Optional[Chord]:
    for ch in chords:
        a, b = ch.segment
        if on_segment(seg.a, a, b) and on_segment(seg.b, a, b):
            return ch
    return None


def _build(poly: Polygon, metric: Metric, chords: list[Chord], cuts=(), points=None) -> FaceDecomposition:
    pieces = split_by_segments(poly, [c.segment for c in chords])
    adjacency = []
    incident: dict[int, list] = {}
    for i, j, seg in sorted(_shared_segments(pieces), key=lambda t: (t[0], t[1])):
        ch = _owner_of(seg, chords)
        owner = ch.owner if ch else None
        label = ch.label if ch else None
        adjacency.append(Adjacency((i, j), seg, owner, label))
        for k in (i, j):
            if (owner, label) not in incident.setdefault(k, []):
                incident[k].append((owner, label))
    faces = tuple(
        Face(piece, face_representative(piece), None, tuple(incident.get(k, ()))) for k, piece in enumerate(pieces)
    )
    return FaceDecomposition(poly, metric, faces, tuple(adjacency), tuple(chords), tuple(cuts), points)


def l1_chords(poly: Polygon, cuts=None) -> tuple[list[L1Cut], list[Chord]]:
    cuts = extract_cuts(poly) if cuts is None else cuts
    chords = [Chord(seg, k, c.label) for k, c in enumerate(cuts) for seg in c.chords]
    return cuts, chords


def l2_chords(poly: Polygon, points: PointSet) -> list[Chord]:
    chords = []
    seen = set()
    for label, p in points.items():
        for seg in windows(poly, p):
            key = frozenset(seg)
            if key not in seen:
                seen.add(key)
                chords.append(Chord(seg, label, None))
    return chords


def decompose(poly: Polygon, metric=Metric.L1, points: Optional[PointSet] = None) -> FaceDecomposition:
    """Split ``poly`` into faces on which visibility to any point set is constant.

    For L1 the faces depend on the polygon alone (all cut chords). For L2 the
    splitting segments are the windows of the points' visibility polygons, so
    ``points`` is required.
    """
    metric = Metric.parse(metric)
    if metric is Metric.L1:
        cuts, chords = l1_chords(poly)
        return _build(poly, metric, chords, cuts, points)
    if points is None:
        raise ValueError("an L2 decomposition needs the point set")
    return _build(poly, metric, l2_chords(poly, points), (), points)


def signature_of(poly: Polygon, points: PointSet, q, metric=Metric.L1) -> Signature:
    q = as_point(q)
    if point_in_polygon(poly, q) is Location.EXTERIOR:
        raise PointOutsidePolygonError(q)
    metric = Metric.parse(metric)
    return frozenset(label for label, p in points.items() if visible(poly, q, p, metric))


def check_points_off_chords(dec: FaceDecomposition, points: PointSet) -> None:
    for label, p in points.items():
        for ch in dec.chords:
            if on_segment(p, *ch.segment):
                raise PointOnCutError(f"point {label} at {p} lies on a splitting chord")


def signature_map(poly: Polygon, points: PointSet, metric=Metric.L1, dec: Optional[FaceDecomposition] = None):
    """Decomposition with every face's signature evaluated at its representative."""
    metric = Metric.parse(metric)
    points.validate(poly)
    if dec is None:
        dec = decompose(poly, metric, points)
    check_points_off_chords(dec, points)
    if metric is Metric.L1:
        labels = [label for label, _ in points.items()]
        targets = [p for _, p in points.items()]

        def sig(q):
            return frozenset(l for l, ok in zip(labels, l1_visible_many(poly, q, targets)) if ok)

        faces = tuple(replace(f, signature=sig(f.representative)) for f in dec.faces)
    else:
        faces = tuple(replace(f, signature=signature_of(poly, points, f.representative, metric)) for f in dec.faces)
    return replace(dec, faces=faces, points=points, _neighbors=None)


def _components(dec: FaceDecomposition, members: set, joined) -> list[list[int]]:
    comps = []
    seen = set()
    for start in sorted(members):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            i = stack.pop()
            for j, adj in dec.neighbors(i):
                if j in members and j not in seen and joined(adj):
                    seen.add(j)
                    comp.append(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def region_of(dec: FaceDecomposition, target) -> list[list[int]]:
    """Connected components of V(target) as sorted lists of face indices.

    Two faces of the region are joined when they share a boundary segment
    whose midpoint itself sees exactly ``target``.
    """
    target = frozenset(target)
    if any(f.signature is None for f in dec.faces):
        raise ValueError("signatures have not been computed")
    members = {k for k, f in enumerate(dec.faces) if f.signature == target}

    def joined(adj: Adjacency) -> bool:
        mid = adj.segment.midpoint()
        return signature_of(dec.polygon, dec.points, mid, dec.metric) == target

    return _components(dec, members, joined)


@lru_cache(maxsize=256)
def _weighted_triangles(piece: Polygon):
    v = piece.vertices
    tris = [(v[a], v[b], v[c]) for a, b, c in triangulate(piece)]
    weights = [cross(*t) for t in tris]
    return tris, weights, sum(weights)


def random_point_in(piece: Polygon, rng: random.Random, resolution: int = 1 << 20) -> Point:
    """A uniformly distributed (up to ``resolution``) interior point of ``piece``."""
    tris, weights, total = _weighted_triangles(piece)
    pick = rng.randrange(resolution) * total / resolution
    acc = 0
    tri = tris[-1]
    for t, w in zip(tris, weights):
        acc += w
        if pick < acc:
            tri = t
            break
    while True:
        u, w = rng.randrange(1, resolution), rng.randrange(1, resolution)
        if u + w < resolution:
            break
    a, b, c = tri
    r = rational(resolution)
    s = u * (b.x - a.x) + w * (c.x - a.x)
    t = u * (b.y - a.y) + w * (c.y - a.y)
    return Point(a.x + s / r, a.y + t / r)


def total_area(dec: FaceDecomposition):
    return sum((polygon_area(f.boundary) for f in dec.faces), 0)
