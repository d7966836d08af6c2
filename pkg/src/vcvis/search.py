"""Randomised search for point sets shattered by L1 visibility regions.

With six points this is a falsification experiment: the VC-dimension of L1
visibility in simple polygons is five, so a single success would be a bug.
Every trial draws from its own stream derived from ``(seed, trial)``, so
trials can run in any order or in parallel and the summary is reproducible.
"""

from __future__ import annotations

import enum
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .cuts import PointOnCutError
from .decomposition import PointSet, decompose, random_point_in, signature_map
from .generators import jitter_polygon, random_simple, random_staircase
from .geometry import Location, Polygon, on_segment, point_in_polygon
from .scenario import Scenario, bundled
from .shattering import subsets_near_full
from .visibility import Metric


class Generator(enum.Enum):
    RANDOM_STAIRCASE = "RandomStaircase"
    RANDOM_SIMPLE = "RandomSimple"
    MUTATE_FIXTURE = "MutateFixture"

    @classmethod
    def parse(cls, value) -> "Generator":
        if isinstance(value, Generator):
            return value
        text = str(value).replace("-", "").replace("_", "").lower()
        for g in cls:
            if g.value.lower() == text:
                return g
        raise ValueError(f"unknown generator {value!r}")


@dataclass(frozen=True)
class SearchConfig:
    point_count: int
    trials: int
    seed: int
    generator: Generator = Generator.RANDOM_STAIRCASE
    workers: int = 1
    fixture: str = "lowerbound5"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.point_count < 1:
            raise ValueError("point_count must be at least 1")


@dataclass
class TrialResult:
    trial: int
    faces: int
    signature_count: int
    shattered: bool
    near_full: bool
    scenario: Optional[Scenario] = None


@dataclass
class SearchSummary:
    config: SearchConfig
    trials: int
    successes: int
    near_full_successes: int
    best_signature_count: int
    best_trial: int
    best_scenario: Optional[Scenario]

    def to_dict(self) -> dict:
        return {
            "pointCount": self.config.point_count,
            "generator": self.config.generator.value,
            "seed": self.config.seed,
            "trials": self.trials,
            "successes": self.successes,
            "nearFullSuccesses": self.near_full_successes,
            "bestSignatureCount": self.best_signature_count,
            "bestTrial": self.best_trial,
            "bestScenario": self.best_scenario.to_dict() if self.best_scenario else None,
        }


def trial_rng(seed: int, trial: int, generator: Generator) -> random.Random:
    return random.Random(f"{seed}:{generator.value}:{trial}")


def _off_chords(p, dec) -> bool:
    return not any(on_segment(p, *ch.segment) for ch in dec.chords)


def _pick_points(poly: Polygon, dec, count: int, rng: random.Random, base=()) -> PointSet:
    chosen = list(base)[:count]
    reps = [f.representative for f in dec.faces if f.representative not in chosen]
    rng.shuffle(reps)
    while len(chosen) < count and reps:
        chosen.append(reps.pop())
    while len(chosen) < count:
        face = dec.faces[rng.randrange(len(dec.faces))]
        p = random_point_in(face.boundary, rng)
        if p not in chosen and _off_chords(p, dec):
            chosen.append(p)
    return PointSet.of(chosen)


def _fixture_scenario(name: str):
    return bundled(name)


def make_scenario(cfg: SearchConfig, trial: int) -> Scenario:
    return _make(cfg, trial)[0]


def _make(cfg: SearchConfig, trial: int):
    rng = trial_rng(cfg.seed, trial, cfg.generator)
    if cfg.generator is Generator.RANDOM_STAIRCASE:
        poly = random_staircase(rng, size=rng.choice((8, 10, 12)), spikes=rng.randrange(6, 14))
        base = ()
    elif cfg.generator is Generator.RANDOM_SIMPLE:
        poly = random_simple(rng, vertices=rng.randrange(10, 20))
        base = ()
    else:
        fixture = _fixture_scenario(cfg.fixture)
        poly = jitter_polygon(fixture.polygon, rng)
        base = [p for p in fixture.points.points if point_in_polygon(poly, p) is Location.INTERIOR]
    dec = decompose(poly, Metric.L1)
    base = [p for p in base if _off_chords(p, dec)]
    points = _pick_points(poly, dec, cfg.point_count, rng, base)
    return Scenario(f"{cfg.generator.value}-{cfg.seed}-{trial}", poly, points, Metric.L1), dec


def run_trial(cfg: SearchConfig, trial: int) -> TrialResult:
    scenario, dec = _make(cfg, trial)
    poly, points = scenario.polygon, scenario.points
    try:
        dec = signature_map(poly, points, Metric.L1, dec)
    except PointOnCutError:
        return TrialResult(trial, len(dec.faces), 0, False, False, scenario)
    sigs = dec.signatures
    n = len(points)
    near = all(t in sigs for t in subsets_near_full(points.labels))
    return TrialResult(trial, len(dec.faces), len(sigs), len(sigs) == 2**n, near, scenario)


def _run_chunk(args) -> list[TrialResult]:
    cfg, trials = args
    out = []
    for t in trials:
        r = run_trial(cfg, t)
        out.append(r)
    return out


def search_no_shatter(cfg: SearchConfig, progress=None) -> SearchSummary:
    """Run ``cfg.trials`` random trials and count shattered point sets."""
    results: list[TrialResult] = []
    if cfg.workers > 1:
        chunks = [(cfg, list(range(k, cfg.trials, cfg.workers))) for k in range(cfg.workers)]
        with ProcessPoolExecutor(cfg.workers) as pool:
            for chunk in pool.map(_run_chunk, chunks):
                results.extend(chunk)
    else:
        for t in range(cfg.trials):
            results.append(run_trial(cfg, t))
            if progress is not None:
                progress(t, results[-1])
    results.sort(key=lambda r: r.trial)
    best = max(results, key=lambda r: (r.signature_count, -r.trial))
    return SearchSummary(
        cfg,
        len(results),
        sum(r.shattered for r in results),
        sum(r.near_full for r in results),
        best.signature_count,
        best.trial,
        best.scenario,
    )
