"""Regenerate the bundled scenario files in src/vcvis/data.

Polyomino fixtures are drawn as ASCII grids (top row first): ``#`` is a
blocked cell, ``.`` a free cell and a digit marks a point at that cell's
centre. Edges are then moved onto distinct coordinate lines with a fixed
seed, so the polygons are in general position. The seed matters for
the shattered fixtures: where two blocked cells only share a grid line, the
spread can open a sliver corridor between them, so the seed is the one whose
exact polygon reproduces the grid count. Every fixture is checked before it
is written.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

from vcvis.decomposition import PointSet
from vcvis.generators import cell_centre, polyomino_polygon
from vcvis.geometry import validate_polygon
from vcvis.scenario import Expected, Scenario, save_scenario
from vcvis.shattering import shatter_check, verify_all
from vcvis.visibility import Metric

DATA = Path(__file__).resolve().parents[1] / "src" / "vcvis" / "data"


def grid(rows: list[str]):
    h, w = len(rows), len(rows[0])
    free = [[rows[h - 1 - y][x] != "#" for y in range(h)] for x in range(w)]
    pts = {}
    for r, row in enumerate(rows):
        for x, ch in enumerate(row):
            if ch.isdigit():
                pts[int(ch)] = (x, h - 1 - r)
    size = max(w, h)
    free = [col + [False] * (size - h) for col in free] + [[False] * size for _ in range(size - w)]
    return free, [pts[k] for k in sorted(pts)]


def from_grid(name: str, rows: list[str], seed: int = 0) -> Scenario:
    free, cells = grid(rows)
    poly = polyomino_polygon(free, random.Random(seed))
    points = PointSet.of([cell_centre(c) for c in cells])
    return Scenario(name, poly, points, Metric.L1)


def with_expected(sc: Scenario) -> Scenario:
    rep = shatter_check(sc.polygon, sc.points, sc.metric)
    return Scenario(sc.name, sc.polygon, sc.points, sc.metric, Expected(rep.shattered, rep.signature_count))


def fixtures() -> list[Scenario]:
    out = []
    u4 = validate_polygon([(0, 0), (4, 0), (4, 4), (3, 4), (3, 1), (1, 1), (1, 4), (0, 4)])
    out.append(Scenario("u4", u4, PointSet.of([("1/2", "3")]), Metric.L1))
    square = validate_polygon([(0, 0), (4, 0), (4, 4), (0, 4)])
    out.append(Scenario("square", square, PointSet.of([(1, 1), (3, 2), ("5/2", "7/2")]), Metric.L1))
    # one descending spike: a single horizontal cut through its tip
    spike = validate_polygon([(0, 0), (10, 0), (10, 8), (6, 9), (5, 3), (4, 7), (0, 10)])
    out.append(Scenario("spike", spike, PointSet.of([(2, 2), (8, 2), (1, 8), (9, 7)]), Metric.L1))
    out.append(Scenario("spike-l2", spike, PointSet.of([(2, 2), (8, 2), (1, 8), (9, 7)]), Metric.L2))
    # U-shaped V(S): every point of the U sees all four points, the arms not each other
    out.append(
        from_grid(
            "ushape4",
            [
                ".##.",
                ".##.",
                "....",
                "1234",
            ],
        )
    )
    for name, (rows, seed) in SHATTERED.items():
        out.append(from_grid(name, rows, seed))
    return [with_expected(sc) for sc in out]


SHATTERED: dict[str, tuple[list[str], int]] = {
    # five points, all 32 subsets; found by annealing on a 16x16 grid
    "lowerbound5": (
        [
            "####....##.....#",
            ".####..##...#...",
            "....##.########.",
            "#.2##...#....#..",
            "#.......##..3#..",
            "..##...........#",
            "#.####.......###",
            "####........###.",
            "...#...##.......",
            "..###..####.....",
            "...##....#....#1",
            "........##..###.",
            "#.......###..##.",
            "##.##.....######",
            "...##...#..#....",
            "#.5.#.#.##..4###",
        ],
        6,
    ),
}


def main() -> int:
    DATA.mkdir(parents=True, exist_ok=True)
    status = 0
    for sc in fixtures():
        bad = [r.lemma for r in verify_all(sc.polygon, sc.points, sc.metric) if not r.holds]
        print(f"{sc.name}: {sc.expected.signature_count} signatures, shattered={sc.expected.shattered}, lemma failures={bad}")
        status |= bool(bad)
        save_scenario(sc, DATA / f"{sc.name}.json")
    return status


if __name__ == "__main__":
    sys.exit(main())
