from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import networkx as nx

from common import MAX_WEIGHT, logger
from errors import ClientError


@dataclass(frozen=True)
class Arc:
    target: int
    weight: int
    port: int
    """port at the arc's tail, index into the tail's adjacency list"""


@dataclass(frozen=True)
class InArc:
    source: int
    weight: int
    port: int
    """port of this arc at `source`"""


class WeightedGraph:
    """
    Directed or undirected graph with positive integer weights in the fixed-port model.
    Adjacency of every vertex is ordered by neighbor id, and port numbers are the positions in that order,
    so two graphs with equal edge sets have equal ports.
    Undirected edges are stored in both endpoint lists.
    """

    def __init__(self, n: int, directed: bool, edges: Iterable[tuple[int, int, int]]):
        if n < 1:
            raise ValueError(f"Vertex count must be positive, got [{n}]")
        self._n = n
        self._directed = directed

        neighbors: list[dict[int, int]] = [{} for _ in range(n)]
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"Edge [{u} {v}] references a vertex outside [0, {n})")
            if u == v:
                raise ValueError(f"Self-loop at vertex [{u}]")
            if not 1 <= w <= MAX_WEIGHT:
                raise ValueError(f"Weight [{w}] of edge [{u} {v}] outside [1, {MAX_WEIGHT}]")
            if v in neighbors[u]:
                raise ValueError(f"Duplicate edge [{u} {v}]")
            neighbors[u][v] = w
            if not directed:
                neighbors[v][u] = w

        self._arcs: tuple[tuple[Arc, ...], ...] = tuple(
            tuple(Arc(target=v, weight=nbrs[v], port=port) for port, v in enumerate(sorted(nbrs)))
            for nbrs in neighbors
        )
        self._ports: tuple[dict[int, int], ...] = tuple(
            {arc.target: arc.port for arc in arcs} for arcs in self._arcs
        )

    @property
    def n(self) -> int:
        return self._n

    @property
    def directed(self) -> bool:
        return self._directed

    @property
    def m(self) -> int:
        arc_count = sum(len(arcs) for arcs in self._arcs)
        return arc_count if self._directed else arc_count // 2

    def arcs(self, u: int) -> tuple[Arc, ...]:
        return self._arcs[u]

    def degree(self, u: int) -> int:
        return len(self._arcs[u])

    def arc_at(self, u: int, port: int) -> Arc:
        if not 0 <= port < len(self._arcs[u]):
            raise ValueError(f"Vertex [{u}] has no port [{port}]")
        return self._arcs[u][port]

    def port_to(self, u: int, v: int) -> int:
        try:
            return self._ports[u][v]
        except KeyError:
            raise ValueError(f"No arc [{u} -> {v}]")

    def has_arc(self, u: int, v: int) -> bool:
        return v in self._ports[u]

    def weight(self, u: int, v: int) -> int:
        return self._arcs[u][self.port_to(u, v)].weight

    @cached_property
    def in_arcs(self) -> tuple[tuple[InArc, ...], ...]:
        """transposed adjacency, built once"""
        incoming: list[list[InArc]] = [[] for _ in range(self._n)]
        for u in range(self._n):
            for arc in self._arcs[u]:
                incoming[arc.target].append(InArc(source=u, weight=arc.weight, port=arc.port))
        return tuple(tuple(sorted(arcs, key=lambda a: a.source)) for arcs in incoming)

    @cached_property
    def max_weight(self) -> int:
        return max((arc.weight for arcs in self._arcs for arc in arcs), default=0)

    def edges(self) -> list[tuple[int, int, int]]:
        """canonical edge list sorted by (u, v); undirected edges listed once with u < v"""
        return [
            (u, arc.target, arc.weight)
            for u in range(self._n)
            for arc in self._arcs[u]
            if self._directed or u < arc.target
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (self._n, self._directed, self.edges()) == (other._n, other._directed, other.edges())

    def __hash__(self) -> int:
        return hash((self._n, self._directed, tuple(self.edges())))

    def __repr__(self) -> str:
        kind = "directed" if self._directed else "undirected"
        return f"WeightedGraph(n={self._n}, m={self.m}, {kind})"


def to_networkx(g: WeightedGraph) -> nx.Graph | nx.DiGraph:
    graph = nx.DiGraph() if g.directed else nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_weighted_edges_from(g.edges())
    return graph


def is_connected(g: WeightedGraph) -> bool:
    graph = to_networkx(g)
    if g.directed:
        return nx.is_strongly_connected(graph)
    return nx.is_connected(graph)


def augment_with_dummy(g: WeightedGraph) -> tuple[WeightedGraph, int]:
    """
    Connects a disconnected graph by adding a dummy vertex with bidirectional edges to every vertex.
    Dummy edges weigh `max_weight * n + 1`, more than any simple path of original edges,
    so distances between mutually reachable vertices are unchanged.
    @return: the augmented graph and the id of the dummy vertex (always `g.n`)
    @raise ClientError: the dummy weight would exceed the weight limit
    """
    dummy = g.n
    big_weight = max(g.max_weight, 1) * g.n + 1
    if big_weight > MAX_WEIGHT:
        raise ClientError(f"Dummy edge weight [{big_weight}] for [{g.n}] vertices exceeds "
                          f"the weight limit [{MAX_WEIGHT}]")
    edges = g.edges()
    edges.extend((u, dummy, big_weight) for u in range(g.n))
    if g.directed:
        edges.extend((dummy, u, big_weight) for u in range(g.n))
    logger.debug(f"Augmented graph with dummy vertex [{dummy}], dummy weight [{big_weight}]")
    return WeightedGraph(g.n + 1, g.directed, edges), dummy
