import pytest

from common import Direction, GraphKind
from errors import ClientError, NotStronglyConnected
from graph.oracle import RoundtripOracle
from graph.shortest_paths import tree_path
from graph.weighted_graph import WeightedGraph
from hierarchy.builder import build_hierarchy
from hierarchy.bunches import in_cluster
from schemes.directed_hop import PATHS, preprocess_hop
from schemes.directed_seven import BALL_LABELS, BALL_RECORDS, CLEAN_RECORDS, DETOURS, TOP_RECORDS, preprocess7
from simulation.harness import run_route
from tests.corpus import DIRECTED_CORPUS, SLOW_DIRECTED_CORPUS, corpus_build, corpus_oracle


def _seven(kind: GraphKind, n: int, seed: int):
    return preprocess7(corpus_oracle(kind, n, seed), corpus_build(kind, n, seed, 3, check_centers=True))


def _check_seven(kind: GraphKind, n: int, seed: int) -> None:
    oracle = corpus_oracle(kind, n, seed)
    build = corpus_build(kind, n, seed, 3, check_centers=True)
    scheme = preprocess7(oracle, build)
    for u in range(n):
        for v in range(u + 1, n):
            there = run_route(scheme, u, v).length
            back = run_route(scheme, v, u).length
            assert there + back <= 7 * oracle.roundtrip(u, v)
            if build.bunches.contains(u, v, 0) or build.bunches.contains(v, u, 0):
                assert there == oracle.distance(u, v)
                assert back == oracle.distance(v, u)


@pytest.mark.parametrize("kind, n, seed", DIRECTED_CORPUS)
def test_seven_stretch(kind: GraphKind, n: int, seed: int) -> None:
    _check_seven(kind, n, seed)


@pytest.mark.slow
@pytest.mark.parametrize("kind, n, seed", SLOW_DIRECTED_CORPUS)
def test_seven_stretch_full_corpus(kind: GraphKind, n: int, seed: int) -> None:
    _check_seven(kind, n, seed)


def test_seven_stretch_cases_are_logged() -> None:
    kind, n, seed = DIRECTED_CORPUS[1]
    scheme = _seven(kind, n, seed)
    cases = set()
    for u in range(n):
        for v in range(n):
            if u != v:
                cases.add(run_route(scheme, u, v).decisions_of("case")[0]["case"])
    assert {"own-ball", "destination-ball"} <= cases
    assert cases <= {"own-ball", "destination-ball", "pivot-cluster", "pivot-detour", "top-tree"}


@pytest.mark.parametrize("kind, n, seed", DIRECTED_CORPUS)
def test_clean_and_detour_split(kind: GraphKind, n: int, seed: int) -> None:
    oracle = corpus_oracle(kind, n, seed)
    build = corpus_build(kind, n, seed, 3, check_centers=True)
    scheme = preprocess7(oracle, build)
    hierarchy = build.hierarchy
    for u in range(n):
        table = scheme.table(u)
        assert set(table[CLEAN_RECORDS]) | set(table[DETOURS]) == set(build.bunches.bunch(u, 1))
        assert not set(table[CLEAN_RECORDS]) & set(table[DETOURS])
        for w in build.bunches.bunch(u, 1):
            path = tree_path(oracle.tree(w, Direction.reverse), u)
            outside = [x for x in path if not in_cluster(hierarchy, build.order, w, x)]
            if outside:
                assert table[DETOURS][w].tree == hierarchy.pivot(outside[0], 2)
            else:
                assert w in table[CLEAN_RECORDS]


@pytest.mark.parametrize("kind, n, seed", DIRECTED_CORPUS)
def test_seven_tables_and_labels(kind: GraphKind, n: int, seed: int) -> None:
    oracle = corpus_oracle(kind, n, seed)
    build = corpus_build(kind, n, seed, 3, check_centers=True)
    scheme = preprocess7(oracle, build)
    hierarchy = build.hierarchy
    for u in range(n):
        table = scheme.table(u)
        assert set(table[BALL_LABELS]) == set(build.bunches.bunch(u, 0))
        assert set(table[TOP_RECORDS]) == set(hierarchy.levels[2])
        assert table[BALL_RECORDS][u].member == (u in build.bunches.bunch(u, 0))
        label = scheme.label(u)
        assert (label.pivot1, label.pivot2) == (hierarchy.pivot(u, 1), hierarchy.pivot(u, 2))
        if label.pivot1 != u:
            first_hop = oracle.graph.arc_at(label.pivot1, label.pivot_port).target
            assert oracle.distance(label.pivot1, u) == (oracle.graph.weight(label.pivot1, first_hop)
                                                        + oracle.distance(first_hop, u))
    assert sum(scheme.family_entries(u)[BALL_LABELS] for u in range(n)) == sum(
        len(build.bunches.bunch(u, 0)) for u in range(n))


def test_seven_needs_three_levels() -> None:
    kind, n, seed = DIRECTED_CORPUS[0]
    with pytest.raises(ClientError):
        preprocess7(corpus_oracle(kind, n, seed), corpus_build(kind, n, seed, 2))


def _check_hop(kind: GraphKind, n: int, seed: int, k: int) -> None:
    oracle = corpus_oracle(kind, n, seed)
    scheme = preprocess_hop(oracle, corpus_build(kind, n, seed, k))
    bound = 2 * scheme.hop_diameter
    for u in range(n):
        for v in range(u + 1, n):
            there = run_route(scheme, u, v)
            back = run_route(scheme, v, u)
            assert there.length + back.length <= (2 * k - 1) * oracle.roundtrip(u, v)
            for trace in (there, back):
                assert trace.decisions_of("level")[0]["hops"] <= bound
                assert trace.hop_count <= bound


@pytest.mark.parametrize("kind, n, seed", DIRECTED_CORPUS)
@pytest.mark.parametrize("k", [2, 3])
def test_bounded_hop_stretch(kind: GraphKind, n: int, seed: int, k: int) -> None:
    _check_hop(kind, n, seed, k)


@pytest.mark.slow
@pytest.mark.parametrize("kind, n, seed", SLOW_DIRECTED_CORPUS)
@pytest.mark.parametrize("k", [2, 3])
def test_bounded_hop_stretch_full_corpus(kind: GraphKind, n: int, seed: int, k: int) -> None:
    _check_hop(kind, n, seed, k)


def test_bounded_hop_bunch_members_are_exact() -> None:
    kind, n, seed = DIRECTED_CORPUS[0]
    oracle = corpus_oracle(kind, n, seed)
    build = corpus_build(kind, n, seed, 2)
    scheme = preprocess_hop(oracle, build)
    for u in range(n):
        assert set(scheme.table(u)[PATHS]) == set(build.bunches.union(u))
        for v in build.bunches.union(u):
            assert run_route(scheme, u, v).length == oracle.distance(u, v)


def test_bounded_hop_needs_strong_connectivity() -> None:
    oracle = RoundtripOracle(WeightedGraph(3, True, [(0, 1, 1), (1, 2, 1), (2, 1, 1)]))
    build = build_hierarchy(oracle, 1, seed=0, size_budget=4.0)
    with pytest.raises(NotStronglyConnected):
        preprocess_hop(oracle, build)
