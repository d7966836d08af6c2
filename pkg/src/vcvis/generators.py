"""Random polygons and point sets for the falsification search."""

from __future__ import annotations

import random
from fractions import Fraction

from .geometry import Point, Polygon, PolygonError, cross, rational, segment_intersection, validate_polygon


def _holes_or_pinches(free: list[list[bool]]) -> bool:
    n = len(free)

    def at(x, y):
        return 0 <= x < n and 0 <= y < n and free[x][y]

    for x in range(-1, n):
        for y in range(-1, n):
            a, b, c, d = at(x, y), at(x + 1, y), at(x, y + 1), at(x + 1, y + 1)
            if a == d and b == c and a != b:
                return True
    # blocked cells must all reach the outside
    seen = set()
    stack = [(x, y) for x in range(-1, n + 1) for y in (-1, n)] + [(x, y) for x in (-1, n) for y in range(n)]
    seen.update(stack)
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            i, j = nb
            if 0 <= i < n and 0 <= j < n and not free[i][j] and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    blocked = sum(1 for col in free for v in col if not v)
    return len(seen) - (4 * n + 4) != blocked


def _connected(free) -> bool:
    n = len(free)
    cells = [(x, y) for x in range(n) for y in range(n) if free[x][y]]
    if not cells:
        return False
    seen = {cells[0]}
    stack = [cells[0]]
    while stack:
        x, y = stack.pop()
        for i, j in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if 0 <= i < n and 0 <= j < n and free[i][j] and (i, j) not in seen:
                seen.add((i, j))
                stack.append((i, j))
    return len(seen) == len(cells)


def polyomino_outline(free) -> list[tuple[int, int]]:
    """Counterclockwise corner list of a simply connected, pinch-free polyomino."""
    n = len(free)

    def at(x, y):
        return 0 <= x < n and 0 <= y < n and free[x][y]

    nxt = {}
    for x in range(n):
        for y in range(n):
            if not free[x][y]:
                continue
            if not at(x, y - 1):
                nxt[(x, y)] = (x + 1, y)
            if not at(x + 1, y):
                nxt[(x + 1, y)] = (x + 1, y + 1)
            if not at(x, y + 1):
                nxt[(x + 1, y + 1)] = (x, y + 1)
            if not at(x - 1, y):
                nxt[(x, y + 1)] = (x, y)
    start = min(nxt)
    ring = [start]
    cur = nxt[start]
    while cur != start:
        ring.append(cur)
        cur = nxt[cur]
    corners = []
    m = len(ring)
    for i in range(m):
        a, b, c = ring[i - 1], ring[i], ring[(i + 1) % m]
        if (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) != 0:
            corners.append(b)
    return corners


def spread_coordinates(corners, rng: random.Random, jitter: Fraction = Fraction(1, 5)) -> list[Point]:
    """Give every axis-parallel edge its own coordinate line.

    Each vertical edge is shifted horizontally (each horizontal edge
    vertically) by a distinct amount smaller than ``jitter`` so that only
    edge-adjacent vertices share an x or y coordinate.
    """
    m = len(corners)
    shifts = rng.sample(range(1, 4 * m), 2 * m)
    scale = jitter / (4 * m)
    out = []
    # edge i runs from corner i to corner i+1
    dx = {}
    dy = {}
    for i in range(m):
        a, b = corners[i], corners[(i + 1) % m]
        s = Fraction(shifts[i] - 2 * m, 1) * scale
        if a[0] == b[0]:
            dx[i] = s
        else:
            dy[i] = s
    for i in range(m):
        ex = dx.get(i, dx.get(i - 1 if i > 0 else m - 1))
        ey = dy.get(i, dy.get(i - 1 if i > 0 else m - 1))
        x, y = corners[i]
        out.append(Point(rational(x) + rational(ex), rational(y) + rational(ey)))
    return out


def _carve_spike(free, rng: random.Random) -> None:
    size = len(free)
    side = rng.randrange(4)
    pos = rng.randrange(1, size - 1)
    x, y = {0: (pos, 0), 1: (size - 1, pos), 2: (pos, size - 1), 3: (0, pos)}[side]
    inward = {0: (0, 1), 1: (-1, 0), 2: (0, -1), 3: (1, 0)}[side]
    for _ in range(rng.randrange(1, size // 2 + 2)):
        if not (0 <= x < size and 0 <= y < size):
            return
        free[x][y] = False
        if rng.random() < 0.3:
            # sidestep to make the spike a staircase
            step = (inward[1], inward[0]) if rng.random() < 0.5 else (-inward[1], -inward[0])
            x, y = x + step[0], y + step[1]
            if 0 <= x < size and 0 <= y < size:
                free[x][y] = False
        x, y = x + inward[0], y + inward[1]


def random_staircase(rng: random.Random, size: int = 10, spikes: int = 9) -> Polygon:
    """Rectilinear polygon: a square with random staircase spikes carved in from the border."""
    for _ in range(50):
        free = [[True] * size for _ in range(size)]
        for _ in range(spikes):
            trial = [col[:] for col in free]
            _carve_spike(trial, rng)
            if _connected(trial) and not _holes_or_pinches(trial):
                free = trial
        corners = polyomino_outline(free)
        for _ in range(5):
            try:
                poly = validate_polygon(spread_coordinates(corners, rng))
            except PolygonError:
                continue
            if poly.general_position:
                return poly
    raise RuntimeError("could not generate a staircase polygon")


def _untangle(pts: list) -> list:
    """2-opt: reverse chains until no two edges cross."""
    n = len(pts)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                a, b = pts[i], pts[i + 1]
                c, d = pts[j], pts[(j + 1) % n]
                if segment_intersection((a, b), (c, d)) is not None:
                    pts[i + 1 : j + 1] = reversed(pts[i + 1 : j + 1])
                    changed = True
    return pts


def random_simple(rng: random.Random, vertices: int = 14, span: int = 60) -> Polygon:
    """Simple polygon through random points (distinct coordinates) by 2-opt untangling."""
    for _ in range(200):
        xs = rng.sample(range(span), vertices)
        ys = rng.sample(range(span), vertices)
        pts = [Point(rational(x), rational(y)) for x, y in zip(xs, ys)]
        rng.shuffle(pts)
        pts = _untangle(pts)
        try:
            poly = validate_polygon(pts)
        except PolygonError:
            continue
        if poly.general_position:
            return poly
    raise RuntimeError("could not generate a simple polygon")


def jitter_polygon(poly: Polygon, rng: random.Random, amount: Fraction = Fraction(1, 40), tries: int = 50) -> Polygon:
    """Move a few vertices by small rational offsets, keeping the polygon valid."""
    x0, y0, x1, y1 = poly.bbox()
    scale = rational(min(x1 - x0, y1 - y0)) * rational(amount)
    for _ in range(tries):
        verts = list(poly.vertices)
        for k in rng.sample(range(len(verts)), max(1, len(verts) // 4)):
            p = verts[k]
            dx = rational(rng.randint(-8, 8)) / 8 * scale
            dy = rational(rng.randint(-8, 8)) / 8 * scale
            verts[k] = Point(p.x + dx, p.y + dy)
        try:
            return validate_polygon(verts)
        except PolygonError:
            continue
    return poly


def is_convex(poly: Polygon) -> bool:
    v = poly.vertices
    n = len(v)
    return all(cross(v[i - 1], v[i], v[(i + 1) % n]) >= 0 for i in range(n))


def polyomino_polygon(free, rng: random.Random, tries: int = 20) -> Polygon:
    """Exact general-position polygon for a simply connected polyomino (``free[x][y]``)."""
    corners = polyomino_outline(free)
    for _ in range(tries):
        try:
            poly = validate_polygon(spread_coordinates(corners, rng))
        except PolygonError:
            continue
        if poly.general_position:
            return poly
    raise RuntimeError("could not place the polyomino in general position")


def cell_centre(cell) -> Point:
    return Point(rational(cell[0]) + rational("1/2"), rational(cell[1]) + rational("1/2"))
