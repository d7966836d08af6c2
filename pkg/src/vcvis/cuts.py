"""L1-cuts: axis-parallel chords through locally extremal vertices and edges."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .chords import interior_intervals, ray_cast, split_by_segments
from .geometry import (
    Location,
    Point,
    Polygon,
    Segment,
    as_point,
    on_segment,
    point_in_polygon,
    segment_intersection,
)


class Direction(enum.Enum):
    N = "N"
    E = "E"
    S = "S"
    W = "W"


class Kind(enum.Enum):
    XMIN = "XMin"
    XMAX = "XMax"
    YMIN = "YMin"
    YMAX = "YMax"

    @property
    def label(self) -> Direction:
        return _LABELS[self]

    @property
    def horizontal(self) -> bool:
        # a y-extremal feature gives a horizontal cut
        return self in (Kind.YMIN, Kind.YMAX)


_LABELS = {Kind.YMIN: Direction.N, Kind.YMAX: Direction.S, Kind.XMIN: Direction.E, Kind.XMAX: Direction.W}


class CutNotInPolygonError(ValueError):
    pass


class PointOnCutError(ValueError):
    pass


@dataclass(frozen=True)
class Feature:
    """A locally extremal vertex, or an axis-parallel extremal edge.

    ``index`` is the vertex index (for an edge: its first endpoint) and
    ``end`` the index of the last vertex of the edge; ``end == index`` for
    vertex features.
    """

    index: int
    end: int
    kind: Kind

    @property
    def is_edge(self) -> bool:
        return self.end != self.index

    def describe(self) -> str:
        what = "edge" if self.is_edge else "vertex"
        return f"{what} {self.index} {self.kind.value}"


@dataclass(frozen=True)
class L1Cut:
    feature: Feature
    chords: tuple[Segment, ...]
    merged: tuple[Feature, ...] = ()

    @property
    def label(self) -> Direction:
        return self.feature.kind.label

    @property
    def horizontal(self) -> bool:
        return self.feature.kind.horizontal

    @property
    def axis(self) -> str:
        return "horizontal" if self.horizontal else "vertical"

    def contains(self, p) -> bool:
        return any(on_segment(p, a, b) for a, b in self.chords)


def _coord(p, horizontal):
    return p.y if horizontal else p.x


def extremal_features(poly: Polygon) -> list[Feature]:
    """Locally extremal vertices and axis-parallel extremal edges.

    Each coordinate is examined separately, so one vertex may show up as
    both x- and y-extremal. Runs of collinear axis-parallel edges count as a
    single edge.
    """
    v = poly.vertices
    n = len(v)
    out: list[Feature] = []
    for horizontal, lo, hi in ((False, Kind.XMIN, Kind.XMAX), (True, Kind.YMIN, Kind.YMAX)):
        c = [_coord(p, horizontal) for p in v]
        seen_runs = set()
        for i in range(n):
            if c[i] == c[i - 1]:
                continue  # not the start of a run
            j = i
            while c[(j + 1) % n] == c[i] and (j + 1) % n != i:
                j = (j + 1) % n
            if (i, j) in seen_runs:
                continue
            seen_runs.add((i, j))
            before, after = c[i - 1], c[(j + 1) % n]
            if before > c[i] and after > c[i]:
                out.append(Feature(i, j, lo))
            elif before < c[i] and after < c[i]:
                out.append(Feature(i, j, hi))
    out.sort(key=lambda f: (f.index, f.end, f.kind.value))
    return out


def ray_shoot(poly: Polygon, origin, direction) -> Point:
    """Nearest boundary point strictly beyond ``origin`` along an axis direction.

    Returns ``origin`` itself when it sits on the boundary and the ray leaves
    the polygon straight away.
    """
    dx, dy = direction
    if (dx == 0) == (dy == 0):
        raise ValueError("direction must be axis-aligned")
    return ray_cast(poly, as_point(origin), (dx, dy))


def _feature_chords(poly: Polygon, f: Feature) -> list[Segment]:
    v = poly.vertices
    a, b = v[f.index], v[f.end]
    if f.is_edge:
        ends = []
        for p, q in ((a, b), (b, a)):
            # continue the edge beyond p, away from q
            d = (p.x - q.x, p.y - q.y)
            d = (d[0] / abs(d[0]) if d[0] else 0, d[1] / abs(d[1]) if d[1] else 0)
            ends.append((p, d))
    elif f.kind.horizontal:
        ends = [(a, (-1, 0)), (a, (1, 0))]
    else:
        ends = [(a, (0, -1)), (a, (0, 1))]
    chords = []
    for p, d in ends:
        hit = ray_shoot(poly, p, d)
        if hit != p:
            chords.append(Segment(p, hit))
    return chords


def _overlap(s: Segment, t: Segment) -> bool:
    return isinstance(segment_intersection(s, t), Segment)


def extract_cuts(poly: Polygon) -> list[L1Cut]:
    """All L1-cuts of a polygon with at least one chord through its interior.

    Cuts from different features that share a chord (only possible when the
    polygon is not in general position) are merged and attributed to the
    feature with the lowest vertex index.
    """
    raw = []
    for f in extremal_features(poly):
        chords = _feature_chords(poly, f)
        if chords:
            raw.append((f, chords))
    groups: list[list[int]] = []
    for k, (f, chords) in enumerate(raw):
        hits = [g for g in groups if any(_overlap(c, d) for j in g for c in raw[j][1] for d in chords)]
        merged = [k]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(sorted(merged))
    cuts = []
    for g in groups:
        feats = sorted((raw[j][0] for j in g), key=lambda f: (f.index, f.end, f.kind.value))
        chords: list[Segment] = []
        for j in g:
            for c in raw[j][1]:
                if not any(set(c) == set(d) for d in chords):
                    chords.append(c)
        cuts.append(L1Cut(feats[0], tuple(chords), tuple(feats[1:])))
    cuts.sort(key=lambda c: (c.feature.index, c.feature.end, c.feature.kind.value))
    return cuts


def split_by_cut(poly: Polygon, cut: L1Cut) -> list[Polygon]:
    """Pieces of ``poly`` after cutting along every chord of ``cut``."""
    for chord in cut.chords:
        pieces = interior_intervals(poly, chord)
        if len(pieces) != 1 or set(pieces[0]) != set(chord):
            raise CutNotInPolygonError(f"chord {chord} is not a chord of the polygon")
    return split_by_segments(poly, cut.chords)


def cut_separates(poly: Polygon, cut: L1Cut, a, b) -> bool:
    """Do ``a`` and ``b`` end up in different pieces of ``split_by_cut``?"""
    a, b = as_point(a), as_point(b)
    for p in (a, b):
        if cut.contains(p):
            raise PointOnCutError(f"{p} lies on the cut of {cut.feature.describe()}")
    parts = split_by_cut(poly, cut)

    def owner(p):
        for k, part in enumerate(parts):
            if point_in_polygon(part, p) is Location.INTERIOR:
                return k
        raise PointOnCutError(f"{p} is not interior to any part")

    return owner(a) != owner(b)
