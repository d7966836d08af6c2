"""Acceptance criteria, one test and one PASS/FAIL line each.

The long-running search (criterion 2) runs 10,000 trials per generator on a
single worker; set VCVIS_ACCEPT_WORKERS to spread it over more processes.
"""

import os
import random
import time

import pytest

from vcvis import cli
from vcvis.decomposition import random_point_in, signature_map, signature_of
from vcvis.generators import random_simple, random_staircase
from vcvis.scenario import bundled, bundled_names, bundled_path
from vcvis.search import Generator, SearchConfig, make_scenario, search_no_shatter
from vcvis.shattering import (
    box_clear,
    grid_staircase_visible,
    oracle_qualified,
    shatter_check,
    verify_direction_bound,
    verify_lemma1,
    verify_lemma2,
)
from vcvis.visibility import Metric, l1_visible, l2_visible

WORKERS = int(os.environ.get("VCVIS_ACCEPT_WORKERS", "1"))


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, text: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")

    return emit


@pytest.fixture(scope="module")
def corpus():
    return [bundled(name) for name in bundled_names()]


@pytest.fixture(scope="module")
def lemma_population(corpus):
    """Corpus scenarios plus 1000 seeded random L1 scenarios with 3-5 points."""
    scenes = [(sc.name, sc.polygon, sc.points, sc.metric) for sc in corpus]
    gens = (Generator.RANDOM_STAIRCASE, Generator.RANDOM_SIMPLE)
    for k in range(1000):
        cfg = SearchConfig(3 + k % 3, 1, 20240 + k, gens[k % 2])
        sc = make_scenario(cfg, 0)
        scenes.append((sc.name, sc.polygon, sc.points, Metric.L1))
    out = []
    for name, poly, points, metric in scenes:
        dec = signature_map(poly, points, metric)
        out.append((name, poly, points, metric, dec))
    return out


def test_criterion_1_lower_bound(report):
    start = time.perf_counter()
    sc = bundled("lowerbound5")
    rep = shatter_check(sc.polygon, sc.points, Metric.L1)
    bad = [t for t, w in rep.witnesses.items() if signature_of(sc.polygon, sc.points, w, Metric.L1) != t]
    elapsed = time.perf_counter() - start
    ok = rep.shattered and rep.signature_count == 32 and not bad and elapsed < 10
    report(1, ok, f"{rep.signature_count} signatures, shattered={rep.shattered}, "
           f"{32 - len(bad)}/32 witnesses re-verified, {elapsed:.1f}s (<10s)")
    assert ok


def test_criterion_2_no_six_point_shattering(report):
    start = time.perf_counter()
    parts = []
    ok = True
    for gen in (Generator.RANDOM_STAIRCASE, Generator.RANDOM_SIMPLE):
        s = search_no_shatter(SearchConfig(6, 10_000, 0, gen, workers=WORKERS))
        parts.append(f"{gen.value}: {s.trials} trials, {s.successes} shattered, best {s.best_signature_count}/64")
        ok &= s.successes == 0 and s.best_signature_count < 64 and s.trials == 10_000
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30 * 60
    report(2, ok, "; ".join(parts) + f"; {elapsed / 60:.1f} min (<30 min)")
    assert ok


def test_criterion_3_lemma1(report, lemma_population):
    violations, applicable = [], 0
    for name, poly, points, metric, dec in lemma_population:
        r = verify_lemma1(poly, points, metric, dec)
        applicable += r.applicable
        if not r.holds:
            violations.append(name)
    report(3, not violations, f"V(S) has one component in {applicable} scenarios with nonempty V(S) "
           f"(of {len(lemma_population)}), {len(violations)} violations")
    assert not violations, violations[:5]


def test_criterion_4_lemma2(report, lemma_population):
    violations, components = [], 0
    for name, poly, points, metric, dec in lemma_population:
        r = verify_lemma2(poly, points, metric, dec)
        components += r.details.get("components", 0)
        if not r.holds:
            violations.append(name)
    report(4, not violations, f"{components} components of V(S minus p) checked for adjacency to V(S), "
           f"{len(violations)} violations")
    assert not violations, violations[:5]


def test_criterion_5_direction_bound(report, lemma_population):
    violations, pairs = [], 0
    for name, poly, points, metric, dec in lemma_population:
        if metric is not Metric.L1:
            continue
        r = verify_direction_bound(poly, points, dec)
        if r.applicable:
            pairs += sum(1 for d in r.details.values() if len(d["points"]) == 2)
        if not r.holds:
            violations.append(name)
    report(5, not violations, f"at most 2 separated points per direction; {pairs} two-point directions "
           f"all share one cut; {len(violations)} violations")
    assert not violations, violations[:5]


def test_criterion_6_l2_implies_l1(report):
    rng = random.Random("criterion-6")
    triples = both = exceptions = 0
    while triples < 10_000:
        poly = random_simple(rng, vertices=rng.randrange(8, 20)) if triples % 2 else random_staircase(rng, size=8, spikes=8)
        for _ in range(25):
            p, q = random_point_in(poly, rng), random_point_in(poly, rng)
            triples += 1
            if l2_visible(poly, p, q):
                both += 1
                if not l1_visible(poly, p, q):
                    exceptions += 1
    report(6, exceptions == 0, f"{triples} triples, {both} L2-visible, {exceptions} not L1-visible")
    assert exceptions == 0


def test_criterion_7_signature_constancy(report, corpus):
    rng = random.Random("criterion-7")
    faces = samples = mismatches = 0
    for sc in corpus:
        for metric in (Metric.L1, Metric.L2):
            dec = signature_map(sc.polygon, sc.points, metric)
            for face in dec.faces:
                faces += 1
                for _ in range(20):
                    q = random_point_in(face.boundary, rng)
                    samples += 1
                    if signature_of(sc.polygon, sc.points, q, metric) != face.signature:
                        mismatches += 1
    report(7, mismatches == 0, f"{faces} faces x 20 samples over L1 and L2 ({samples} checks), {mismatches} mismatches")
    assert mismatches == 0


def test_criterion_8_grid_oracle(report, corpus):
    lines, ok = [], True
    for sc in corpus:
        poly = sc.polygon
        x0, y0, x1, y1 = poly.bbox()
        pitch = min(x1 - x0, y1 - y0) / 16
        rng = random.Random(f"criterion-8:{sc.name}")
        pairs = drawn = disagree = 0
        clear = []
        while pairs < 1000 and drawn < 400_000:
            # endpoints are drawn from the part of P at least one pitch from the boundary
            drawn += 1
            c = random_point_in(poly, rng, 1 << 12)
            if box_clear(poly, c, pitch):
                clear.append(c)
            if len(clear) < 2:
                continue
            p, q = clear
            clear = []
            answer = oracle_qualified(poly, p, q, pitch)
            if answer is None:
                continue
            pairs += 1
            disagree += answer != grid_staircase_visible(poly, p, q, pitch)
        ok &= pairs == 1000 and disagree == 0
        lines.append(f"{sc.name} {pairs} pairs/{disagree} disagreements")
    report(8, ok, "; ".join(lines))
    assert ok


def _cli_runs(argv, capsys, tmp_path):
    outs = []
    for k in range(2):
        if argv[0] == "render":
            target = tmp_path / f"out{k}.svg"
            cli.run(argv + ["-o", str(target)])
            capsys.readouterr()
            outs.append(target.read_bytes())
        else:
            cli.run(argv)
            outs.append(capsys.readouterr().out.encode())
    return outs


def test_criterion_9_determinism(report, capsys, tmp_path):
    u4 = str(bundled_path("u4"))
    lb = str(bundled_path("lowerbound5"))
    l2 = str(bundled_path("spike-l2"))
    commands = [
        ["validate", lb],
        ["cuts", lb],
        ["faces", lb],
        ["faces", l2],
        ["signatures", lb],
        ["signatures", l2],
        ["visible", u4, "--from", "1/2,3", "--to", "7/2,3", "--metric", "l1"],
        ["visible", u4, "--from", "1/2,3", "--to", "2,1/2", "--metric", "l2"],
        ["shatter", lb],
        ["verify", lb, "--lemma", "all"],
        ["search", "--points", "6", "--trials", "30", "--seed", "5", "--generator", "RandomStaircase"],
        ["search", "--points", "6", "--trials", "30", "--seed", "5", "--generator", "RandomSimple"],
        ["render", lb],
        ["render", l2],
    ]
    unstable = []
    for argv in commands:
        a, b = _cli_runs(argv, capsys, tmp_path)
        if a != b or not a:
            unstable.append(" ".join(argv[:1]))
    ok = not unstable
    report(9, ok, f"{len(commands)} CLI invocations over all 9 subcommands byte-identical on repeat; unstable: {unstable or 'none'}")
    assert ok
