"""Shattering checks and empirical verification of the structural lemmas.

``shatter_check`` decides whether every subset of a point set is seen exactly
from some face of the decomposition. The ``verify_*`` functions check the
three structural facts about the regions V(T) that the VC-dimension bound
rests on; a violation is always a bug somewhere, so they double as
regression tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import floor
from typing import Optional

from .decomposition import FaceDecomposition, PointSet, Signature, region_of, signature_map
from .geometry import Location, Point, Polygon, as_point, point_in_polygon, rational
from .visibility import Metric

MAX_POINTS = 20


@dataclass
class ShatterReport:
    shattered: bool
    achieved: frozenset
    witnesses: dict
    missing: list
    decomposition: Optional[FaceDecomposition] = field(default=None, repr=False)

    @property
    def signature_count(self) -> int:
        return len(self.achieved)


def all_subsets(labels) -> list[Signature]:
    labels = sorted(labels)
    return [frozenset(c) for k in range(len(labels) + 1) for c in combinations(labels, k)]


def sig_key(sig) -> tuple:
    return (len(sig), sorted(sig))


def shatter_check(poly: Polygon, points: PointSet, metric=Metric.L1, dec=None) -> ShatterReport:
    if len(points) > MAX_POINTS:
        raise ValueError(f"at most {MAX_POINTS} points are supported")
    dec = signature_map(poly, points, metric, dec)
    witnesses: dict = {}
    for face in dec.faces:
        witnesses.setdefault(face.signature, face.representative)
    achieved = frozenset(witnesses)
    missing = [t for t in all_subsets(points.labels) if t not in achieved]
    return ShatterReport(not missing, achieved, witnesses, missing, dec)


@dataclass
class LemmaReport:
    lemma: str
    holds: bool
    applicable: bool = True
    counterexample: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.holds and self.counterexample is None:
            raise ValueError("a failing lemma report needs a counterexample")

    def to_dict(self) -> dict:
        out = {"lemma": self.lemma, "holds": self.holds, "applicable": self.applicable}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out


def _smap(poly, points, metric, dec):
    if dec is not None and dec.points is not None and all(f.signature is not None for f in dec.faces):
        return dec
    return signature_map(poly, points, metric, dec)


def _not_applicable(lemma: str) -> LemmaReport:
    return LemmaReport(lemma, True, applicable=False, details={"reason": "V(S) is empty"})


def verify_lemma1(poly: Polygon, points: PointSet, metric=Metric.L1, dec=None) -> LemmaReport:
    """V(S) is path-connected: exactly one component."""
    dec = _smap(poly, points, metric, dec)
    comps = region_of(dec, points.full)
    if not comps:
        return _not_applicable("1")
    if len(comps) == 1:
        return LemmaReport("1", True, details={"components": 1, "faces": len(comps[0])})
    return LemmaReport("1", False, counterexample={"components": comps}, details={"components": len(comps)})


def verify_lemma2(poly: Polygon, points: PointSet, metric=Metric.L1, dec=None) -> LemmaReport:
    """Every component of every V(S minus one point) touches V(S) along a segment."""
    dec = _smap(poly, points, metric, dec)
    full = points.full
    core = {k for k, f in enumerate(dec.faces) if f.signature == full}
    if not core:
        return _not_applicable("2")
    checked = 0
    for label in points.labels:
        for comp in region_of(dec, full - {label}):
            checked += 1
            if not any(j in core for i in comp for j, _ in dec.neighbors(i)):
                return LemmaReport("2", False, counterexample={"missing": label, "faces": comp})
    return LemmaReport("2", True, details={"components": checked})


def separations(dec: FaceDecomposition, full) -> dict:
    """Direction -> {(label, cut id)} for cut segments between V(S) and V(S minus label)."""
    core = {k for k, f in enumerate(dec.faces) if f.signature == full}
    found: dict = {}
    for k, face in enumerate(dec.faces):
        sig = face.signature
        if k in core or len(sig) != len(full) - 1:
            continue
        (label,) = full - sig
        for j, adj in dec.neighbors(k):
            if j in core and adj.label is not None:
                found.setdefault(adj.label, set()).add((label, adj.owner))
    return found


def verify_direction_bound(poly: Polygon, points: PointSet, dec=None) -> LemmaReport:
    """Per direction at most two separated points, and two only through one shared cut."""
    dec = _smap(poly, points, Metric.L1, dec)
    full = points.full
    if not any(f.signature == full for f in dec.faces):
        return _not_applicable("3")
    found = separations(dec, full)
    summary = {}
    for direction in sorted(found, key=lambda d: d.value):
        pairs = found[direction]
        labels = sorted({l for l, _ in pairs})
        cut_ids = sorted({c for _, c in pairs})
        summary[direction.value] = {"points": labels, "cuts": cut_ids}
        if len(labels) > 2 or (len(labels) == 2 and len(cut_ids) != 1):
            return LemmaReport(
                "3",
                False,
                counterexample={"direction": direction.value, "points": labels, "cuts": cut_ids},
                details=summary,
            )
    return LemmaReport("3", True, details=summary)


def verify_all(poly: Polygon, points: PointSet, metric=Metric.L1, which=("1", "2", "3")) -> list[LemmaReport]:
    metric = Metric.parse(metric)
    dec = signature_map(poly, points, metric)
    out = []
    if "1" in which:
        out.append(verify_lemma1(poly, points, metric, dec))
    if "2" in which:
        out.append(verify_lemma2(poly, points, metric, dec))
    if "3" in which and metric is Metric.L1:
        out.append(verify_direction_bound(poly, points, dec))
    return out


def subsets_near_full(labels, depth: int = 2) -> list[Signature]:
    """S, all S minus one point, all S minus two points."""
    full = frozenset(labels)
    return [full - frozenset(c) for k in range(depth + 1) for c in combinations(sorted(labels), k)]


class _Grid:
    """Cells of a square grid whose closed square lies inside the polygon."""

    def __init__(self, poly: Polygon, pitch):
        self.poly = poly
        self.pitch = pitch
        x0, y0, x1, y1 = poly.bbox()
        self.x0, self.y0 = x0, y0
        self.nx = int(floor((x1 - x0) / pitch)) + 1
        self.ny = int(floor((y1 - y0) / pitch)) + 1
        self._inside: dict = {}

    def cell(self, p) -> tuple[int, int]:
        return int(floor((p[0] - self.x0) / self.pitch)), int(floor((p[1] - self.y0) / self.pitch))

    def inside(self, i: int, j: int) -> bool:
        key = (i, j)
        if key not in self._inside:
            self._inside[key] = self._square_inside(i, j)
        return self._inside[key]

    def _square_inside(self, i: int, j: int) -> bool:
        if not (0 <= i < self.nx and 0 <= j < self.ny):
            return False
        h = self.pitch
        xa, ya = self.x0 + i * h, self.y0 + j * h
        xb, yb = xa + h, ya + h
        for c in ((xa, ya), (xb, ya), (xb, yb), (xa, yb)):
            if point_in_polygon(self.poly, c) is Location.EXTERIOR:
                return False
        for a, b in self.poly.edges():
            if _segment_meets_open_box(a, b, xa, ya, xb, yb):
                return False
        return True


def _segment_meets_open_box(a, b, xa, ya, xb, yb) -> bool:
    lo, hi = rational(0), rational(1)
    for p0, d, low, high in ((a.x, b.x - a.x, xa, xb), (a.y, b.y - a.y, ya, yb)):
        if d == 0:
            if not (low < p0 < high):
                return False
            continue
        t0, t1 = (low - p0) / d, (high - p0) / d
        if t0 > t1:
            t0, t1 = t1, t0
        lo, hi = max(lo, t0), min(hi, t1)
    # open box: the parameter interval must have positive length
    return lo < hi


@lru_cache(maxsize=64)
def _grid(poly: Polygon, pitch) -> _Grid:
    return _Grid(poly, pitch)


def grid_staircase_visible(poly: Polygon, p, q, pitch) -> bool:
    """Independent L1 oracle: a monotone 4-connected path of fully inside grid cells."""
    p, q = as_point(p), as_point(q)
    grid = _grid(poly, rational(pitch))
    (pi, pj), (qi, qj) = grid.cell(p), grid.cell(q)
    if not grid.inside(pi, pj) or not grid.inside(qi, qj):
        return False
    si = 1 if qi >= pi else -1
    sj = 1 if qj >= pj else -1
    reach = {(pi, pj)}
    for i in range(pi, qi + si, si):
        for j in range(pj, qj + sj, sj):
            if (i, j) == (pi, pj) or not grid.inside(i, j):
                continue
            if (i - si, j) in reach or (i, j - sj) in reach:
                reach.add((i, j))
    return (qi, qj) in reach


def box_clear(poly: Polygon, c, r) -> bool:
    """The closed square of half-width ``r`` around ``c`` lies inside the polygon."""
    x0, y0, x1, y1 = c.x - r, c.y - r, c.x + r, c.y + r
    if point_in_polygon(poly, c) is not Location.INTERIOR:
        return False
    if any(_segment_meets_open_box(a, b, x0, y0, x1, y1) for a, b in poly.edges()):
        return False
    return all(point_in_polygon(poly, k) is not Location.EXTERIOR for k in ((x0, y0), (x1, y0), (x0, y1), (x1, y1)))


def linf_point_segment(p, a, b):
    """Exact L-infinity distance from ``p`` to the closed segment ``ab``."""
    dx, dy = b.x - a.x, b.y - a.y
    ex, ey = a.x - p.x, a.y - p.y
    cands = [rational(0), rational(1)]
    # breakpoints of max(|ex + t dx|, |ey + t dy|)
    for num, den in ((-ex, dx), (-ey, dy), (ey - ex, dx - dy), (-ey - ex, dx + dy)):
        if den != 0 and 0 < num / den < 1:
            cands.append(num / den)
    return min(max(abs(ex + t * dx), abs(ey + t * dy)) for t in cands)


def linf_segments(s, t):
    """L-infinity distance between two closed segments."""
    from .geometry import segment_intersection

    if segment_intersection(s, t) is not None:
        return rational(0)
    return min(
        linf_point_segment(s[0], *t), linf_point_segment(s[1], *t), linf_point_segment(t[0], *s), linf_point_segment(t[1], *s)
    )


def oracle_qualified(poly: Polygon, p, q, pitch) -> Optional[bool]:
    """L1 answer for ``p, q`` if the pair is well clear of every feature the grid cannot resolve.

    Qualified pairs keep a clearance of one pitch from the polygon boundary
    and from the visibility boundary. Both endpoints need a free box of
    half-width one pitch, the geodesic must stay a pitch away (L-infinity)
    from every edge not incident to one of its bends, and the answer must not
    change when either endpoint, or both together, move to a corner of their
    box. Returns ``None`` for pairs that do not qualify.
    """
    from .visibility import geodesic, is_xy_monotone, l1_visible

    p, q = as_point(p), as_point(q)
    h = rational(pitch)
    if not (box_clear(poly, p, h) and box_clear(poly, q, h)):
        return None
    path = geodesic(poly, p, q)
    bends = set(path[1:-1])
    for leg in zip(path, path[1:]):
        for a, b in poly.edges():
            if a in bends or b in bends:
                continue
            if linf_segments(leg, (a, b)) < h:
                return None
    answer = is_xy_monotone(path)
    shifts = [(sx * h, sy * h) for sx in (-1, 1) for sy in (-1, 1)]
    for dx, dy in shifts:
        pp, qq = Point(p.x + dx, p.y + dy), Point(q.x + dx, q.y + dy)
        for a, b in ((pp, q), (p, qq), (pp, qq)):
            if l1_visible(poly, a, b) != answer:
                return None
    return answer
