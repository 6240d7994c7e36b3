import json

import pytest

from cli import EXIT_INVARIANT, EXIT_OK, EXIT_USAGE, main


def _prepare(tmp_path, scheme: str = "undirected-rt", n: int = 40, kind: str = "erdos-renyi",
             density: str = "0.2", k: str = "2") -> tuple:
    graph, state = tmp_path / "graph.txt", tmp_path / f"{scheme}.json"
    assert main(["gen", "--kind", kind, "--n", str(n), "--density", density, "--seed", "3", "-o", str(graph)]) == EXIT_OK
    assert main(["preprocess", "--scheme", scheme, "--k", k, "--seed", "1", "--budget", "4",
                 "-i", str(graph), "-o", str(state)]) == EXIT_OK
    return graph, state


def test_bounds_row(capsys) -> None:
    assert main(["bounds", "--k-list", "4"]) == EXIT_OK
    assert "4,9.0,2.250" in capsys.readouterr().out.splitlines()


def test_bounds_file(tmp_path) -> None:
    out = tmp_path / "table.csv"
    assert main(["bounds", "-o", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "# schema=bounds/1"
    assert lines[2:] == ["4,9.0,2.250", "6,14.3,2.389", "8,19.6,2.455", "10,24.9,2.493", "20,51.3,2.567",
                         "100,262.4,2.624"]


def test_bounds_exact(capsys) -> None:
    assert main(["bounds", "--exact", "--k-list", "4,20"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[2:] == ["4,9.0,2.250", "20,51.3,2.567"]


def test_bounds_exact_rejects_large_k() -> None:
    assert main(["bounds", "--exact", "--k-list", "4,100"]) == EXIT_USAGE


@pytest.mark.parametrize("k_list", ["1", "4,x", ""])
def test_bounds_rejects_bad_k(k_list: str) -> None:
    assert main(["bounds", "--k-list", k_list]) == EXIT_USAGE


def test_gen_writes_graph(tmp_path) -> None:
    out = tmp_path / "g.txt"
    assert main(["gen", "--kind", "directed-strongly-connected", "--n", "20", "--density", "0.1",
                 "--wmin", "2", "--wmax", "9", "-o", str(out)]) == EXIT_OK
    header, *edges = out.read_text().splitlines()
    assert header.startswith("20 ") and header.endswith(" directed")
    assert all(2 <= int(line.split()[2]) <= 9 for line in edges)


def test_route_to_self(tmp_path, capsys) -> None:
    _, state = _prepare(tmp_path)
    capsys.readouterr()
    assert main(["route", "--state", str(state), "-s", "5", "-t", "5"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert "length 0" in out
    assert "stretch exact" in out


def test_route_with_trace(tmp_path, capsys) -> None:
    _, state = _prepare(tmp_path)
    trace = tmp_path / "route.log"
    assert main(["route", "--state", str(state), "-s", "0", "-t", "17", "--trace", str(trace)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "distance" in out and "hops" in out
    lines = trace.read_text().splitlines()
    assert lines[0] == "route 0 -> 17"
    assert lines[-1].startswith("status delivered")


def test_route_rejects_unknown_vertex(tmp_path) -> None:
    _, state = _prepare(tmp_path)
    assert main(["route", "--state", str(state), "-s", "0", "-t", "400"]) == EXIT_USAGE


def test_eval_stays_within_guarantee(tmp_path) -> None:
    _, state = _prepare(tmp_path, n=100, density="0.1")
    report = tmp_path / "report.json"
    assert main(["eval", "--state", str(state), "--no-progress", "--jobs", "2", "-o", str(report)]) == EXIT_OK
    summary = json.loads(report.read_text())["summary"]
    assert summary["pairs"] == 100 * 99 // 2
    assert summary["max_roundtrip_stretch"] <= 3
    assert summary["within_bounds"]


def test_eval_csv_with_config(tmp_path) -> None:
    _, state = _prepare(tmp_path, scheme="directed-hop", n=30, kind="directed-strongly-connected", density="0.1")
    config = tmp_path / "rtroute.conf"
    config.write_text("pairs=sample:40:2\n")
    report = tmp_path / "report.csv"
    assert main(["--config", str(config), "eval", "--state", str(state), "--no-progress", "-o", str(report)]) == EXIT_OK
    lines = report.read_text().splitlines()
    assert lines[0] == "# schema=eval/1"
    assert len([line for line in lines if not line.startswith("#")]) == 41


def test_preprocess_is_deterministic(tmp_path) -> None:
    graph, state = _prepare(tmp_path, scheme="average", k="3")
    again = tmp_path / "again.json"
    assert main(["preprocess", "--scheme", "average", "--k", "3", "--seed", "1", "--budget", "4",
                 "-i", str(graph), "-o", str(again)]) == EXIT_OK
    assert again.read_bytes() == state.read_bytes()


def test_preprocess_disconnected_graph(tmp_path) -> None:
    graph, state = tmp_path / "g.txt", tmp_path / "s.json"
    graph.write_text("4 2 undirected\n0 1 1\n2 3 1\n")
    assert main(["preprocess", "--scheme", "undirected-rt", "--k", "2", "-i", str(graph), "-o", str(state)]) == EXIT_USAGE
    assert main(["preprocess", "--scheme", "undirected-rt", "--k", "2", "--augment",
                 "-i", str(graph), "-o", str(state)]) == EXIT_OK
    assert json.loads(state.read_text())["dummy"] == 4


def test_client_errors_exit_with_one(tmp_path) -> None:
    assert main(["preprocess", "--scheme", "average", "-i", str(tmp_path / "none.txt"),
                 "-o", str(tmp_path / "s.json")]) == EXIT_USAGE
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1 undirected\n0 1 -4\n")
    assert main(["preprocess", "--scheme", "average", "-i", str(bad), "-o", str(tmp_path / "s.json")]) == EXIT_USAGE


def test_usage_errors_exit_with_one() -> None:
    with pytest.raises(SystemExit) as info:
        main(["route", "--state", "x.json"])
    assert info.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["preprocess", "--scheme", "unknown", "-i", "a", "-o", "b"])
    assert info.value.code == EXIT_USAGE


def test_broken_state_exits_with_two(tmp_path) -> None:
    _, state = _prepare(tmp_path)
    data = json.loads(state.read_text())
    data["tables"][0]["clusters"] = []
    state.write_text(json.dumps(data))
    assert main(["route", "--state", str(state), "-s", "0", "-t", "11"]) == EXIT_INVARIANT


def test_stats(tmp_path) -> None:
    states = tmp_path / "states"
    states.mkdir()
    for n in (20, 30, 40):
        graph = tmp_path / f"g{n}.txt"
        assert main(["gen", "--kind", "erdos-renyi", "--n", str(n), "--density", "0.3", "-o", str(graph)]) == EXIT_OK
        assert main(["preprocess", "--scheme", "undirected-rt", "--budget", "4", "-i", str(graph),
                     "-o", str(states / f"s{n}.json")]) == EXIT_OK
    out = tmp_path / "storage.csv"
    assert main(["stats", "--states", str(states), "-o", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "# schema=storage/1"
    assert sum(line.startswith("s") for line in lines[2:]) == 3
    assert any(line.startswith("# fit scheme=undirected-rt k=2") for line in lines)


def test_stats_needs_states(tmp_path) -> None:
    assert main(["stats", "--states", str(tmp_path), "-o", str(tmp_path / "x.csv")]) == EXIT_USAGE
