from fractions import Fraction

import pytest

from common import GraphKind
from errors import DirectedInput
from hierarchy.builder import build_hierarchy
from schemes.average import (
    EXACT_K_LIMIT, AverageOracleScheme, c_sequence, initial_estimate, level_stretch_bound, preprocess_avg,
    stretch_bound,
)
from simulation.harness import run_route
from tests.corpus import SLOW_UNDIRECTED_CORPUS, UNDIRECTED_CORPUS, corpus_build, corpus_oracle


def test_c_sequence_values() -> None:
    assert c_sequence(0) == [1]
    assert c_sequence(1) == [1, 2]
    assert c_sequence(2) == [1, Fraction(5, 3), 2]
    for a in range(1, EXACT_K_LIMIT // 2):
        sequence = c_sequence(a)
        assert sequence[0] == 1
        assert sequence[a] == 2
        assert sequence == sorted(sequence)


def test_c_sequence_rejects_negative_length() -> None:
    with pytest.raises(ValueError):
        c_sequence(-1)


@pytest.mark.parametrize("k, expected", [(4, 9.0), (6, 14.3), (8, 19.6), (10, 24.9), (20, 51.3), (100, 262.4)])
def test_stretch_bound_matches_published_constants(k: int, expected: float) -> None:
    assert abs(stretch_bound(k, exact=False) - expected) < 0.05
    if k <= EXACT_K_LIMIT:
        assert abs(stretch_bound(k, exact=False) - float(stretch_bound(k))) < 1e-9


def test_exact_bounds_stop_at_the_limit() -> None:
    assert float(stretch_bound(EXACT_K_LIMIT)) == pytest.approx(stretch_bound(EXACT_K_LIMIT, exact=False))
    with pytest.raises(ValueError):
        stretch_bound(EXACT_K_LIMIT + 1)
    with pytest.raises(ValueError):
        level_stretch_bound(EXACT_K_LIMIT)
    assert stretch_bound(10 * EXACT_K_LIMIT, exact=False) > stretch_bound(EXACT_K_LIMIT, exact=False)


def test_small_stretch_bounds() -> None:
    assert stretch_bound(2) == 3
    assert stretch_bound(4) == 9
    assert level_stretch_bound(0) == 1
    assert level_stretch_bound(1) == 3
    with pytest.raises(ValueError):
        stretch_bound(1)


def test_level_bound_is_nondecreasing() -> None:
    bounds = [level_stretch_bound(level) for level in range(EXACT_K_LIMIT)]
    assert bounds == sorted(bounds)


def test_initial_estimate() -> None:
    assert initial_estimate((0, 4, 9), (0, 1, 7), 0) == 0
    assert initial_estimate((0, 4, 9), (0, 1, 7), 2) == max(4 - 0, 9 - 1)


def _check_average(kind: GraphKind, n: int, seed: int, k: int) -> None:
    oracle = corpus_oracle(kind, n, seed)
    build = corpus_build(kind, n, seed, k)
    scheme = preprocess_avg(oracle, build)
    bound = stretch_bound(k)
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            trace = run_route(scheme, u, v)
            distance = oracle.distance(u, v)
            level = trace.decisions_of("level")[0]["level"]
            assert trace.length <= level_stretch_bound(level) * distance
            assert trace.length <= bound * distance
            for delta in trace.decisions_of("delta"):
                assert delta["value"] <= distance
                if delta["r"] > 0:
                    assert delta["value"] >= delta["c"] * delta["previous"]


@pytest.mark.parametrize("kind, n, seed", UNDIRECTED_CORPUS)
@pytest.mark.parametrize("k", [3, 4, 5])
def test_average_stretch_and_estimates(kind: GraphKind, n: int, seed: int, k: int) -> None:
    _check_average(kind, n, seed, k)


@pytest.mark.slow
@pytest.mark.parametrize("kind, n, seed", SLOW_UNDIRECTED_CORPUS)
@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_average_stretch_full_corpus(kind: GraphKind, n: int, seed: int, k: int) -> None:
    _check_average(kind, n, seed, k)


def _check_oracle_variant(kind: GraphKind, n: int, seed: int, k: int) -> None:
    oracle = corpus_oracle(kind, n, seed)
    scheme = preprocess_avg(oracle, corpus_build(kind, n, seed, k), with_distance_hint=True)
    assert isinstance(scheme, AverageOracleScheme)
    assert scheme.needs_distance_hint
    for u in range(n):
        for v in range(n):
            distance = oracle.distance(u, v)
            trace = run_route(scheme, u, v, distance_hint=distance)
            assert trace.length <= (2 * k - 1) * distance
            if u != v:
                (choice,) = trace.decisions_of("final") + trace.decisions_of("detour")
                assert trace.length <= (2 * choice["i"] + 1) * distance


@pytest.mark.parametrize("kind, n, seed", UNDIRECTED_CORPUS)
@pytest.mark.parametrize("k", [3, 4])
def test_oracle_variant_stretch(kind: GraphKind, n: int, seed: int, k: int) -> None:
    _check_oracle_variant(kind, n, seed, k)


@pytest.mark.slow
@pytest.mark.parametrize("kind, n, seed", SLOW_UNDIRECTED_CORPUS)
@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_oracle_variant_full_corpus(kind: GraphKind, n: int, seed: int, k: int) -> None:
    _check_oracle_variant(kind, n, seed, k)


def test_oracle_variant_needs_hint() -> None:
    kind, n, seed = UNDIRECTED_CORPUS[0]
    scheme = preprocess_avg(corpus_oracle(kind, n, seed), corpus_build(kind, n, seed, 3), with_distance_hint=True)
    with pytest.raises(ValueError):
        run_route(scheme, 0, 1)


@pytest.mark.parametrize("kind, n, seed", UNDIRECTED_CORPUS)
def test_storage_is_twice_the_bunches(kind: GraphKind, n: int, seed: int) -> None:
    build = corpus_build(kind, n, seed, 3)
    scheme = preprocess_avg(corpus_oracle(kind, n, seed), build)
    assert scheme.total_entries() == 2 * build.bunches.total()
    for u in range(n):
        assert scheme.family_entries(u)["members"] == len(build.clusters.cluster(u))


def test_single_level_routes_exactly() -> None:
    oracle = corpus_oracle(GraphKind.RANDOM_GEOMETRIC, 50, 3)
    scheme = preprocess_avg(oracle, build_hierarchy(oracle, 1, seed=0, size_budget=4.0))
    assert scheme.oneway_bound == 1
    for u in range(50):
        for v in range(50):
            assert run_route(scheme, u, v).length == oracle.distance(u, v)


def test_bunch_members_are_reached_exactly() -> None:
    kind, n, seed = UNDIRECTED_CORPUS[1]
    oracle = corpus_oracle(kind, n, seed)
    build = corpus_build(kind, n, seed, 4)
    scheme = preprocess_avg(oracle, build)
    for u in range(n):
        for v in build.bunches.union(u):
            assert run_route(scheme, u, v).length == oracle.distance(u, v)


def test_rejects_directed_graphs() -> None:
    kind, n, seed = GraphKind.DIRECTED, 40, 4
    with pytest.raises(DirectedInput):
        preprocess_avg(corpus_oracle(kind, n, seed), corpus_build(kind, n, seed, 2))
