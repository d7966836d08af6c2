import pytest

from vcvis.decomposition import signature_map
from vcvis.render import RAMP, TOP, WHITE, fill_for, render_svg
from vcvis.scenario import bundled, bundled_names
from vcvis.search import Generator, SearchConfig, make_scenario, run_trial, search_no_shatter


def test_palette():
    n = 5
    assert [fill_for(k, n) for k in (5, 4, 3)] == list(TOP)
    assert fill_for(2, n) == RAMP[0] and fill_for(1, n) == RAMP[1]
    assert fill_for(0, n) == WHITE
    # zero wins even for tiny point sets
    assert fill_for(0, 1) == WHITE and fill_for(1, 1) == TOP[0]
    assert fill_for(1, 12) == RAMP[-1]


def test_render_is_deterministic():
    sc = bundled("spike")
    dec = signature_map(sc.polygon, sc.points, sc.metric)
    assert render_svg(dec, sc.points) == render_svg(signature_map(sc.polygon, sc.points, sc.metric), sc.points)


def test_generator_names():
    assert Generator.parse("randomstaircase") is Generator.RANDOM_STAIRCASE
    assert Generator.parse("Random-Simple") is Generator.RANDOM_SIMPLE
    with pytest.raises(ValueError):
        Generator.parse("nope")


@pytest.mark.parametrize("gen", [Generator.RANDOM_STAIRCASE, Generator.RANDOM_SIMPLE])
def test_trials_are_reproducible(gen):
    cfg = SearchConfig(4, 5, 11, gen)
    a = [make_scenario(cfg, t).dumps() for t in range(5)]
    b = [make_scenario(cfg, t).dumps() for t in range(5)]
    assert a == b
    assert len(set(a)) == 5
    r = run_trial(cfg, 3)
    assert r.signature_count <= 16 and r.faces >= 1


def test_parallel_matches_serial():
    one = search_no_shatter(SearchConfig(4, 6, 3, Generator.RANDOM_SIMPLE))
    two = search_no_shatter(SearchConfig(4, 6, 3, Generator.RANDOM_SIMPLE, workers=2))
    assert one.to_dict() == two.to_dict()


def test_six_points_small_search():
    s = search_no_shatter(SearchConfig(6, 20, 7, Generator.RANDOM_STAIRCASE))
    assert s.successes == 0 and s.best_signature_count < 64


@pytest.mark.skipif("lowerbound5" not in bundled_names(), reason="lower-bound fixture not bundled")
def test_mutating_the_lower_bound_keeps_some_successes():
    s = search_no_shatter(SearchConfig(5, 100, 0, Generator.MUTATE_FIXTURE))
    assert s.successes >= 1
