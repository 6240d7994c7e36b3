import json

import pytest

from common import GraphKind, SchemeTag
from errors import ClientError, DirectedInput, DisconnectedInput
from graph.weighted_graph import WeightedGraph
from schemes.preprocessing import preprocess_scheme
from schemes.serialization import STATE_FORMAT, load_scheme, save_scheme, scheme_from_json, scheme_to_json
from simulation.harness import run_route
from tests.corpus import corpus_graph, corpus_oracle

SCHEME_GRAPHS = [
    (SchemeTag.UNDIRECTED_RT, (GraphKind.ERDOS_RENYI, 24, 11)),
    (SchemeTag.DIRECTED_7, (GraphKind.DIRECTED, 25, 13)),
    (SchemeTag.DIRECTED_HOP, (GraphKind.DIRECTED, 25, 13)),
    (SchemeTag.AVERAGE, (GraphKind.RANDOM_GEOMETRIC, 30, 12)),
    (SchemeTag.AVERAGE_ORACLE, (GraphKind.RANDOM_GEOMETRIC, 30, 12)),
]


@pytest.mark.parametrize("tag, entry", SCHEME_GRAPHS)
def test_saved_state_routes_like_the_original(tag: SchemeTag, entry: tuple, tmp_path) -> None:
    g = corpus_graph(*entry)
    scheme = preprocess_scheme(g, tag, 3, 1, 4.0)
    path = tmp_path / "state.json"
    save_scheme(scheme, path)
    restored = load_scheme(path)

    assert restored.tag is tag
    assert restored.graph == scheme.graph
    assert restored.hierarchy == scheme.hierarchy
    assert [restored.entries(u) for u in range(g.n)] == [scheme.entries(u) for u in range(g.n)]
    oracle = corpus_oracle(*entry)
    for u in range(0, g.n, 4):
        for v in range(g.n):
            hint = oracle.distance(u, v) if scheme.needs_distance_hint else None
            assert run_route(restored, u, v, distance_hint=hint).hops == run_route(scheme, u, v, distance_hint=hint).hops


def test_state_is_canonical(tmp_path) -> None:
    g = corpus_graph(GraphKind.ERDOS_RENYI, 24, 11)
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    save_scheme(preprocess_scheme(g, SchemeTag.AVERAGE, 2, 3, 4.0), first)
    save_scheme(preprocess_scheme(g, SchemeTag.AVERAGE, 2, 3, 4.0), second)
    assert first.read_bytes() == second.read_bytes()
    data = json.loads(first.read_text())
    assert data["format"] == STATE_FORMAT
    assert data["scheme"] == "average"


def test_hop_state_keeps_hop_diameter() -> None:
    g = corpus_graph(GraphKind.DIRECTED, 25, 13)
    scheme = preprocess_scheme(g, SchemeTag.DIRECTED_HOP, 2, 0, 4.0)
    assert scheme_from_json(scheme_to_json(scheme)).hop_diameter == scheme.hop_diameter


def test_malformed_states(tmp_path) -> None:
    with pytest.raises(ClientError):
        scheme_from_json({"format": "something-else"})
    with pytest.raises(ClientError):
        scheme_from_json({"format": STATE_FORMAT, "scheme": "average"})
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ClientError):
        load_scheme(path)
    with pytest.raises(ClientError):
        load_scheme(tmp_path / "missing.json")


def test_seven_stretch_always_uses_three_levels() -> None:
    scheme = preprocess_scheme(corpus_graph(GraphKind.DIRECTED, 25, 13), SchemeTag.DIRECTED_7, 2, 0, 4.0)
    assert scheme.k == 3


def test_disconnected_input() -> None:
    g = WeightedGraph(4, False, [(0, 1, 1), (2, 3, 1)])
    with pytest.raises(DisconnectedInput):
        preprocess_scheme(g, SchemeTag.UNDIRECTED_RT, 2, 0, 4.0)
    scheme = preprocess_scheme(g, SchemeTag.UNDIRECTED_RT, 2, 0, 4.0, augment=True)
    assert scheme.n == 5
    assert run_route(scheme, 0, 3).length > 0


def test_undirected_schemes_reject_digraphs() -> None:
    g = corpus_graph(GraphKind.DIRECTED, 25, 13)
    for tag in (SchemeTag.UNDIRECTED_RT, SchemeTag.AVERAGE, SchemeTag.AVERAGE_ORACLE):
        with pytest.raises(DirectedInput):
            preprocess_scheme(g, tag, 2, 0, 4.0)
