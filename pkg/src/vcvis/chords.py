"""Ray casting and splitting of polygons along chords.

A chord is a segment whose endpoints lie on a polygon's boundary and whose
interior lies inside it. Both the L1 cut decomposition and the L2 window
decomposition are built from these two primitives.
"""

from __future__ import annotations

from .geometry import (
    ZERO,
    Location,
    Point,
    Polygon,
    Segment,
    cross,
    on_segment,
    point_at,
    point_in_polygon,
    segment_intersection,
    segment_param,
)


def _ray_contacts(poly: Polygon, origin: Point, direction) -> list:
    """Parameters ``t > 0`` where ``origin + t*direction`` touches the boundary."""
    dx, dy = direction
    ts = []
    ox, oy = origin
    for a, b in poly.edges():
        ex, ey = b.x - a.x, b.y - a.y
        den = dx * ey - dy * ex
        wx, wy = a.x - ox, a.y - oy
        if den == 0:
            if wx * dy - wy * dx != 0:
                continue
            # collinear: both edge endpoints lie on the ray's line
            for q in (a, b):
                t = (q.x - ox) / dx if dx != 0 else (q.y - oy) / dy
                ts.append(t)
            continue
        t = (wx * ey - wy * ex) / den
        s = (wx * dy - wy * dx) / den
        if 0 <= s <= 1:
            ts.append(t)
    return [t for t in ts if t > 0]


def ray_cast(poly: Polygon, origin, direction) -> Point:
    """First boundary point hit by the ray from ``origin`` along ``direction``.

    ``origin`` must be inside the closed polygon. When the origin is on the
    boundary and the ray does not enter the interior, the origin itself is
    returned (a zero-length chord).
    """
    origin = Point(*origin)
    ts = _ray_contacts(poly, origin, direction)
    if not ts:
        return origin
    t = min(ts)
    mid = Point(origin.x + direction[0] * t / 2, origin.y + direction[1] * t / 2)
    if point_in_polygon(poly, mid) is not Location.INTERIOR:
        return origin
    return Point(origin.x + direction[0] * t, origin.y + direction[1] * t)


def interior_intervals(poly: Polygon, seg) -> list[Segment]:
    """Maximal pieces of ``seg`` that run through the interior of ``poly``.

    Every returned piece has both endpoints on the boundary of ``poly``;
    pieces dangling into the interior are dropped.
    """
    a, b = seg
    ts = {ZERO, 1}
    for e in poly.edges():
        hit = segment_intersection((a, b), e)
        if hit is None:
            continue
        if isinstance(hit, Segment):
            ts.add(segment_param(a, b, hit.a))
            ts.add(segment_param(a, b, hit.b))
        else:
            ts.add(segment_param(a, b, hit))
    ordered = sorted(ts)
    out = []
    for t0, t1 in zip(ordered, ordered[1:]):
        mid = point_at(a, b, (t0 + t1) / 2)
        if point_in_polygon(poly, mid) is not Location.INTERIOR:
            continue
        p, q = point_at(a, b, t0), point_at(a, b, t1)
        if point_in_polygon(poly, p) is Location.BOUNDARY and point_in_polygon(poly, q) is Location.BOUNDARY:
            out.append(Segment(p, q))
    return out


def _insert_boundary_point(verts: list, p) -> int:
    """Index of ``p`` in the cyclic vertex list, inserting it on its edge if needed."""
    n = len(verts)
    for i, v in enumerate(verts):
        if v == p:
            return i
    for i in range(n):
        if on_segment(p, verts[i], verts[(i + 1) % n]):
            verts.insert(i + 1, Point(*p))
            return i + 1
    raise ValueError(f"{p} is not on the boundary")


def split_polygon(poly: Polygon, chord) -> tuple[Polygon, Polygon]:
    """Split ``poly`` along a chord into two counterclockwise polygons."""
    verts = list(poly.vertices)
    _insert_boundary_point(verts, chord[0])
    _insert_boundary_point(verts, chord[1])
    ia = verts.index(chord[0])
    ib = verts.index(chord[1])
    n = len(verts)
    first = [verts[(ia + k) % n] for k in range((ib - ia) % n + 1)]
    second = [verts[(ib + k) % n] for k in range((ia - ib) % n + 1)]
    return Polygon(tuple(first)), Polygon(tuple(second))


def split_by_segments(poly: Polygon, segments) -> list[Polygon]:
    """Cut ``poly`` along every segment; returns the resulting pieces.

    Segments may cross each other and may extend beyond a piece. Pieces come
    back in a deterministic order.
    """
    segments = list(segments)
    done: list[Polygon] = []
    stack = [(poly, 0)]
    while stack:
        piece, start = stack.pop()
        for k in range(start, len(segments)):
            pieces = interior_intervals(piece, segments[k])
            if pieces:
                left, right = split_polygon(piece, pieces[0])
                # same segment may still cross the pieces elsewhere
                stack.append((right, k))
                stack.append((left, k))
                break
        else:
            done.append(piece)
    return done


def is_chord(poly: Polygon, seg) -> bool:
    """True iff ``seg`` runs through the interior with endpoints on the boundary."""
    pieces = interior_intervals(poly, seg)
    return len(pieces) == 1 and set(pieces[0]) == {Point(*seg[0]), Point(*seg[1])}


def strictly_inside_direction(prev, v, nxt, d) -> bool:
    """Does direction ``d`` at boundary vertex ``v`` point into the interior?

    ``prev`` and ``nxt`` are the neighbours of ``v`` on a counterclockwise
    boundary. The interior cone runs counterclockwise from ``nxt - v`` to
    ``prev - v``.
    """
    e1 = (nxt[0] - v[0], nxt[1] - v[1])
    e2 = (prev[0] - v[0], prev[1] - v[1])
    o = (0, 0)
    c1 = cross(o, e1, d)
    c2 = cross(o, d, e2)
    if cross(o, e1, e2) > 0:
        # convex corner: cone narrower than pi
        return c1 > 0 and c2 > 0
    # reflex or flat corner: everything except the closed complement wedge
    return c1 > 0 or c2 > 0
