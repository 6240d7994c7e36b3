from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from common import SchemeTag, logger
from errors import HeaderExhausted, NotStronglyConnected
from graph.oracle import RoundtripOracle
from graph.shortest_paths import tree_path_ports
from graph.weighted_graph import WeightedGraph, is_connected
from hierarchy.builder import HierarchyBuild
from hierarchy.levels import Hierarchy
from schemes.abstract import RoutingScheme, RoutingTable
from schemes.undirected_rt import select_level
from simulation.view import Decision, Deliver, Forward, LocalView, Step

PATHS = "paths"


@dataclass(frozen=True)
class PathEntry:
    """ports of the shortest path from the table's owner to the key vertex"""
    ports: tuple[int, ...]

    def to_json(self) -> list[int]:
        return list(self.ports)

    @staticmethod
    def from_json(data: list[int]) -> "PathEntry":
        return PathEntry(tuple(data))


@dataclass(frozen=True)
class PathLabel:
    """L(u): for every level i, the pivot p_i(u) and the ports of the shortest path p_i(u) -> u"""
    vertex: int
    pivots: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]

    @property
    def words(self) -> int:
        return 1 + len(self.pivots) + sum(len(path) for path in self.paths)

    def to_json(self) -> list[Any]:
        return [self.vertex, list(self.pivots), [list(path) for path in self.paths]]

    @staticmethod
    def from_json(data: list[Any]) -> "PathLabel":
        vertex, pivots, paths = data
        return PathLabel(vertex, tuple(pivots), tuple(tuple(path) for path in paths))


@dataclass(frozen=True)
class SourceRoute:
    ports: tuple[int, ...]
    position: int = 0

    @property
    def words(self) -> int:
        return len(self.ports) + 1


def route_hop_step(view: LocalView) -> Step:
    dest = view.dest_label
    if view.vertex == dest.vertex:
        return Deliver()

    header: SourceRoute | None = view.header
    events: tuple[Decision, ...] = ()
    if header is None:
        paths = view.table(PATHS)
        level = select_level(paths, dest)
        pivot = dest.pivots[level]
        header = SourceRoute(paths[pivot].ports + dest.paths[level])
        events = (Decision("level", {"level": level, "pivot": pivot, "hops": len(header.ports)}),)

    if header.position >= len(header.ports):
        raise HeaderExhausted(f"Header path ended at [{view.vertex}] before reaching [{dest.vertex}]")
    return Forward(header.ports[header.position], SourceRoute(header.ports, header.position + 1), events)


class DirectedHopScheme(RoutingScheme):
    FAMILIES = {PATHS: PathEntry}
    LABEL = PathLabel

    def __init__(self, graph: WeightedGraph, hierarchy: Hierarchy, tables: list[RoutingTable],
                 labels: list[Any], hop_diameter: int, dummy: int | None = None):
        super().__init__(graph, hierarchy, tables, labels, dummy)
        self._hop_diameter = hop_diameter

    @property
    def tag(self) -> SchemeTag:
        return SchemeTag.DIRECTED_HOP

    @property
    def hop_diameter(self) -> int:
        return self._hop_diameter

    @property
    def roundtrip_bound(self) -> Fraction:
        return Fraction(2 * self.k - 1)

    def step(self, view: LocalView) -> Step:
        return route_hop_step(view)


def preprocess_hop(oracle: RoundtripOracle, build: HierarchyBuild, dummy: int | None = None) -> DirectedHopScheme:
    """
    RT(u) stores the shortest path to every member of B(u), L(u) the shortest paths from its pivots to u.
    Undirected graphs are accepted as the symmetric special case.
    @raise NotStronglyConnected: some pair has no roundtrip
    """
    g = oracle.graph
    if not is_connected(g):
        raise NotStronglyConnected("The bounded-hop scheme needs a strongly connected graph")
    hierarchy = build.hierarchy

    tables: list[RoutingTable] = [
        {PATHS: {w: PathEntry(tuple(tree_path_ports(oracle.tree(u), w))) for w in build.bunches.union(u)}}
        for u in range(g.n)
    ]
    labels = [
        PathLabel(
            vertex=u,
            pivots=hierarchy.pivots[u],
            paths=tuple(tuple(tree_path_ports(oracle.tree(p), u)) for p in hierarchy.pivots[u]),
        )
        for u in range(g.n)
    ]
    hop_diameter = oracle.hop_diameter()
    logger.info(f"Bounded-hop scheme ready: n [{g.n}], k [{hierarchy.k}], hop diameter [{hop_diameter}]")
    return DirectedHopScheme(g, hierarchy, tables, labels, hop_diameter, dummy)
