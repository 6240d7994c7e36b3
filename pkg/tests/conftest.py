import pytest

from graph.weighted_graph import WeightedGraph


@pytest.fixture
def path_graph() -> WeightedGraph:
    return WeightedGraph(3, False, [(0, 1, 5), (1, 2, 7)])


@pytest.fixture
def triangle() -> WeightedGraph:
    return WeightedGraph(3, False, [(0, 1, 1), (1, 2, 1), (0, 2, 3)])


@pytest.fixture
def four_cycle() -> WeightedGraph:
    return WeightedGraph(4, False, [(0, 1, 1), (1, 2, 2), (2, 3, 3), (0, 3, 4)])
