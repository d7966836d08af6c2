"""Exact rational 2D geometry kernel.

Coordinates are ``gmpy2.mpq`` rationals throughout; no predicate ever touches
a float. Polygons are validated once (simplicity, orientation, general
position) and are immutable afterwards, which makes them safe to share and to
use as cache keys.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import gmpy2

Rational = type(gmpy2.mpq(0))
ZERO = gmpy2.mpq(0)
ONE = gmpy2.mpq(1)

_NUMBER = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\s*$")
_RATIO = re.compile(r"^\s*[+-]?\d+\s*/\s*\d+\s*$")


def rational(value) -> Rational:
    """Convert ``value`` to an exact rational.

    Accepts ints, Fractions, mpq values and strings of the form ``"3"``,
    ``"-0.25"``, ``"1e-3"`` or ``"2/7"``. Floats are rejected: they are
    almost never what the caller meant.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return gmpy2.mpq(value)
    if isinstance(value, Fraction):
        return gmpy2.mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        if _RATIO.match(value):
            num, den = value.replace(" ", "").split("/")
            if int(den) == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return gmpy2.mpq(int(num), int(den))
        if _NUMBER.match(value):
            return gmpy2.mpq(value.strip())
        raise ValueError(f"not an exact number: {value!r}")
    if type(value).__name__ == "mpz":
        return gmpy2.mpq(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q) -> str:
    """Canonical string form: ``"3"``, ``"-1/2"``."""
    q = rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Point(NamedTuple):
    x: Rational
    y: Rational

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(rational(x), rational(y))

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    def __str__(self) -> str:
        return f"({format_rational(self.x)},{format_rational(self.y)})"


def as_point(p) -> Point:
    if isinstance(p, Point) and isinstance(p.x, Rational) and isinstance(p.y, Rational):
        return p
    return Point(rational(p[0]), rational(p[1]))


class Segment(NamedTuple):
    a: Point
    b: Point

    def midpoint(self) -> Point:
        return Point((self.a.x + self.b.x) / 2, (self.a.y + self.b.y) / 2)

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)


def make_segment(a, b) -> Segment:
    a, b = as_point(a), as_point(b)
    if a == b:
        raise ValueError("degenerate segment: endpoints coincide")
    return Segment(a, b)


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def cross(o, a, b):
    """Twice the signed area of triangle ``o, a, b``."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def sign(v) -> int:
    return (v > 0) - (v < 0)


def orientation(a, b, c) -> Orientation:
    return Orientation(sign(cross(a, b, c)))


def on_segment(p, a, b) -> bool:
    """True iff ``p`` lies on the closed segment ``ab``."""
    if cross(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segment_param(a, b, p):
    """Parameter ``t`` with ``p = a + t (b - a)``, assuming ``p`` is on line ``ab``."""
    if a[0] != b[0]:
        return (p[0] - a[0]) / (b[0] - a[0])
    return (p[1] - a[1]) / (b[1] - a[1])


def point_at(a, b, t) -> Point:
    return Point(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def segment_intersection(s, t):
    """Intersection of two closed segments.

    Returns ``None`` when they are disjoint, a :class:`Point` for a single
    common point and a :class:`Segment` for a collinear overlap of positive
    length.
    """
    a, b = s
    c, d = t
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    if d1 == 0 and d2 == 0:
        # collinear: project onto ab
        t0 = segment_param(a, b, c)
        t1 = segment_param(a, b, d)
        lo = max(ZERO, min(t0, t1))
        hi = min(ONE, max(t0, t1))
        if lo > hi:
            return None
        if lo == hi:
            return point_at(a, b, lo)
        return Segment(point_at(a, b, lo), point_at(a, b, hi))
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)
    if sign(d1) * sign(d2) > 0 or sign(d3) * sign(d4) > 0:
        return None
    # the lines cross at a single point inside both segments
    if d1 == 0:
        return Point(*c)
    if d2 == 0:
        return Point(*d)
    if d3 == 0:
        return Point(*a)
    if d4 == 0:
        return Point(*b)
    tt = d3 / (d3 - d4)
    return point_at(a, b, tt)


class PolygonError(ValueError):
    """Raised for vertex lists that do not describe a valid simple polygon."""


class TooFewVerticesError(PolygonError):
    pass


class RepeatedVertexError(PolygonError):
    def __init__(self, index: int, other: int, point):
        super().__init__(f"vertex {index} repeats vertex {other} at {point}")
        self.index = index
        self.other = other


class NotSimpleError(PolygonError):
    def __init__(self, edge_i: int, edge_j: int):
        super().__init__(f"edges {edge_i} and {edge_j} intersect")
        self.edges = (edge_i, edge_j)


class PointOutsidePolygonError(ValueError):
    def __init__(self, point):
        super().__init__(f"point {Point(*point)} is not inside the polygon")
        self.point = point


@dataclass(frozen=True)
class Polygon:
    """A validated simple polygon with counterclockwise vertex order.

    Build instances through :func:`validate_polygon`; the constructor trusts
    its input.
    """

    vertices: tuple[Point, ...]
    general_position: bool = field(default=False, compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i % len(self.vertices)]

    def edges(self) -> list[Segment]:
        v = self.vertices
        n = len(v)
        return [Segment(v[i], v[(i + 1) % n]) for i in range(n)]

    def bbox(self):
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    @property
    def area(self) -> Rational:
        return polygon_area(self)


def signed_area(vertices: Sequence) -> Rational:
    n = len(vertices)
    s = ZERO
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s / 2


def polygon_area(poly: Polygon) -> Rational:
    return abs(signed_area(poly.vertices))


def _edges_clash(v, i: int, j: int) -> bool:
    """Do edges ``i`` and ``j`` meet anywhere they are not allowed to?"""
    n = len(v)
    s = (v[i], v[(i + 1) % n])
    t = (v[j], v[(j + 1) % n])
    hit = segment_intersection(s, t)
    if hit is None:
        return False
    if (j - i) % n == 1 or (i - j) % n == 1:
        # consecutive edges may only share their common endpoint
        if isinstance(hit, Segment):
            return True
        shared = v[j] if (j - i) % n == 1 else v[i]
        if n == 3:
            return False
        return hit != shared
    return True


def is_general_position(vertices: Sequence[Point]) -> bool:
    """No three vertices collinear; equal x or y only for edge-adjacent vertices."""
    n = len(vertices)
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            a, b = vertices[i], vertices[j]
            if (a.x == b.x or a.y == b.y) and not adjacent:
                return False
    # three collinear vertices share a direction as seen from one of them
    for i in range(n):
        seen = set()
        for j in range(n):
            if j == i:
                continue
            dx = vertices[j].x - vertices[i].x
            dy = vertices[j].y - vertices[i].y
            key = None if dx == 0 else dy / dx
            if key in seen:
                return False
            seen.add(key)
    return True


def validate_polygon(vertices: Iterable) -> Polygon:
    """Check a vertex list and return it as a counterclockwise :class:`Polygon`.

    Raises TooFewVerticesError, RepeatedVertexError or NotSimpleError.
    Clockwise input is reversed rather than rejected.
    """
    v = [as_point(p) for p in vertices]
    n = len(v)
    if n < 3:
        raise TooFewVerticesError(f"a polygon needs at least 3 vertices, got {n}")
    seen: dict[Point, int] = {}
    for i, p in enumerate(v):
        if p in seen:
            raise RepeatedVertexError(i, seen[p], p)
        seen[p] = i
    for i in range(n):
        for j in range(i + 1, n):
            if _edges_clash(v, i, j):
                raise NotSimpleError(i, j)
    area = signed_area(v)
    if area == 0:
        raise NotSimpleError(0, n - 1)
    if area < 0:
        v.reverse()
    return Polygon(tuple(v), is_general_position(v))


def point_in_polygon(poly: Polygon, p) -> Location:
    """Classify ``p`` against the closed polygon (exact crossing test)."""
    px, py = p[0], p[1]
    v = poly.vertices
    inside = False
    ax, ay = v[-1]
    for bx, by in v:
        if (ay > py) != (by > py):
            c = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
            if c == 0:
                return Location.BOUNDARY
            # half-open rule on y avoids double counting at vertices
            if (c > 0) == (by > ay):
                inside = not inside
        elif ay == py == by and min(ax, bx) <= px <= max(ax, bx):
            return Location.BOUNDARY
        elif (ay == py and ax == px) or (by == py and bx == px):
            return Location.BOUNDARY
        ax, ay = bx, by
    return Location.INTERIOR if inside else Location.EXTERIOR


def contains(poly: Polygon, p) -> bool:
    """Closed containment."""
    return point_in_polygon(poly, p) is not Location.EXTERIOR


def winding_number(poly: Polygon, p) -> int:
    """Winding number of the boundary around ``p`` (p must not be on it)."""
    wn = 0
    v = poly.vertices
    n = len(v)
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        if a.y <= p[1]:
            if b.y > p[1] and cross(a, b, p) > 0:
                wn += 1
        elif b.y <= p[1] and cross(a, b, p) < 0:
            wn -= 1
    return wn


def _in_closed_triangle(p, a, b, c) -> bool:
    return cross(a, b, p) >= 0 and cross(b, c, p) >= 0 and cross(c, a, p) >= 0


def triangulate(poly: Polygon) -> list[tuple[int, int, int]]:
    """Ear-clipping triangulation; returns ``n - 2`` CCW index triples."""
    v = poly.vertices
    idx = list(range(len(v)))
    out: list[tuple[int, int, int]] = []
    guard = 0
    i = 0
    while len(idx) > 3:
        m = len(idx)
        if guard > m:
            raise RuntimeError("ear clipping failed; polygon is not simple")
        ip, ic, inx = idx[(i - 1) % m], idx[i % m], idx[(i + 1) % m]
        a, b, c = v[ip], v[ic], v[inx]
        ear = cross(a, b, c) > 0
        if ear:
            for k in idx:
                if k in (ip, ic, inx):
                    continue
                if _in_closed_triangle(v[k], a, b, c):
                    ear = False
                    break
        if ear:
            out.append((ip, ic, inx))
            del idx[i % m]
            guard = 0
            i = (i - 1) % (m - 1)
        else:
            i = (i + 1) % m
            guard += 1
    out.append((idx[0], idx[1], idx[2]))
    return out


def bounding_box_points(points: Iterable) -> tuple:
    pts = list(points)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def dist2(a, b):
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
