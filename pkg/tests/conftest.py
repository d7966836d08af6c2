import heapq
import random

import mpmath
import pytest

from vcvis.geometry import Point, validate_polygon
from vcvis.scenario import bundled, bundled_names
from vcvis.visibility import segment_inside

mpmath.mp.dps = 50

U4_VERTICES = [(0, 0), (4, 0), (4, 4), (3, 4), (3, 1), (1, 1), (1, 4), (0, 4)]


@pytest.fixture(scope="session")
def u4():
    return validate_polygon(U4_VERTICES)


@pytest.fixture(scope="session")
def corpus():
    return [bundled(name) for name in bundled_names()]


def dijkstra_geodesic(poly, p, q):
    """Shortest path over the visibility graph of vertices plus p and q (mpmath lengths)."""
    nodes = [p, q] + [v for v in poly.vertices if v not in (p, q)]
    dist = {0: mpmath.mpf(0)}
    prev = {}
    heap = [(mpmath.mpf(0), 0)]
    done = set()
    while heap:
        d, i = heapq.heappop(heap)
        if i in done:
            continue
        done.add(i)
        if i == 1:
            break
        for j, v in enumerate(nodes):
            if j in done or not segment_inside(poly, nodes[i], v):
                continue
            a = nodes[i]
            w = mpmath.sqrt(_len2(a, v))
            nd = d + w
            if j not in dist or nd < dist[j]:
                dist[j] = nd
                prev[j] = i
                heapq.heappush(heap, (nd, j))
    path = [1]
    while path[-1] != 0:
        path.append(prev[path[-1]])
    return [nodes[k] for k in reversed(path)], dist[1]


def _len2(a, b):
    d2 = (b.x - a.x) ** 2 + (b.y - a.y) ** 2
    return mpmath.mpf(int(d2.numerator)) / mpmath.mpf(int(d2.denominator))


def path_length(path):
    return sum((mpmath.sqrt(_len2(a, b)) for a, b in zip(path, path[1:])), mpmath.mpf(0))


def random_interior_point(poly, rng):
    from vcvis.decomposition import random_point_in

    return random_point_in(poly, rng, resolution=1 << 12)


def rng_for(*parts):
    return random.Random(":".join(str(p) for p in parts))
