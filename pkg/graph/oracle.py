from common import Direction, INFINITY, add_lengths
from errors import UnreachablePair
from graph.shortest_paths import SsspResult, dijkstra
from graph.weighted_graph import WeightedGraph


class RoundtripOracle:
    """
    All-pairs exact distances of one graph, the ground truth every scheme is checked against.
    Forward trees are computed for every source up front, reverse trees on demand.
    """
    _graph: WeightedGraph
    _forward: tuple[SsspResult, ...]
    _reverse: dict[int, SsspResult]

    def __init__(self, g: WeightedGraph):
        self._graph = g
        self._forward = tuple(dijkstra(g, s, Direction.forward) for s in range(g.n))
        self._reverse = {}

    @property
    def graph(self) -> WeightedGraph:
        return self._graph

    def distance(self, u: int, v: int) -> int:
        return self._forward[u].dist[v]

    def roundtrip(self, u: int, v: int) -> int:
        return add_lengths(self.distance(u, v), self.distance(v, u))

    def tree(self, root: int, direction: Direction = Direction.forward) -> SsspResult:
        if direction is Direction.forward:
            return self._forward[root]
        if root not in self._reverse:
            self._reverse[root] = dijkstra(self._graph, root, Direction.reverse)
        return self._reverse[root]

    def hop_diameter(self) -> int:
        """maximum edge count over all deterministic shortest-path tree paths"""
        return max(
            (hops for result in self._forward for v, hops in enumerate(result.hops) if result.reachable(v)),
            default=0,
        )


def roundtrip_distance(g: WeightedGraph, u: int, v: int) -> int:
    there = dijkstra(g, u).dist[v]
    back = dijkstra(g, v).dist[u]
    if INFINITY in (there, back):
        raise UnreachablePair(f"No roundtrip between [{u}] and [{v}]")
    return there + back
