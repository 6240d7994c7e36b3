import heapq
from dataclasses import dataclass
from typing import Iterable

from common import Direction, INFINITY
from graph.weighted_graph import WeightedGraph


@dataclass(frozen=True)
class SsspResult:
    source: int
    direction: Direction
    dist: tuple[int, ...]
    """length of the shortest path source->v (forward) or v->source (reverse); INFINITY if unreachable"""
    parent: tuple[int | None, ...]
    """predecessor on the path from source (forward) or successor toward source (reverse)"""
    parent_port: tuple[int | None, ...]
    """port of the tree arc between v and parent[v], numbered at the arc's tail"""
    hops: tuple[int, ...]
    """edge count of the tree path"""

    def reachable(self, v: int) -> bool:
        return self.dist[v] != INFINITY


def dijkstra(g: WeightedGraph, source: int, direction: Direction = Direction.forward) -> SsspResult:
    """
    Deterministic single-source shortest paths.
    Ties between equally short paths are broken toward the predecessor with the smaller id,
    which keeps the tree consistent with every subpath.
    With `Direction.reverse` the search runs over the transposed adjacency and computes distances TO the source.
    """
    if not 0 <= source < g.n:
        raise ValueError(f"Source [{source}] outside [0, {g.n})")

    dist = [INFINITY] * g.n
    parent: list[int | None] = [None] * g.n
    parent_port: list[int | None] = [None] * g.n
    hops = [0] * g.n
    done = [False] * g.n
    dist[source] = 0
    heap = [(0, source)]

    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if direction is Direction.forward:
            relaxations = ((arc.target, arc.weight, arc.port) for arc in g.arcs(u))
        else:
            # walking an arc v->u backwards; its port lives at v
            relaxations = ((arc.source, arc.weight, arc.port) for arc in g.in_arcs[u])
        for v, weight, port in relaxations:
            if done[v]:
                continue
            candidate = d + weight
            if candidate < dist[v] or (candidate == dist[v] and u < parent[v]):
                if candidate < dist[v]:
                    heapq.heappush(heap, (candidate, v))
                dist[v] = candidate
                parent[v] = u
                parent_port[v] = port
                hops[v] = hops[u] + 1

    return SsspResult(
        source=source,
        direction=direction,
        dist=tuple(dist),
        parent=tuple(parent),
        parent_port=tuple(parent_port),
        hops=tuple(hops),
    )


def multi_source_dijkstra(
        g: WeightedGraph,
        sources: Iterable[int],
        direction: Direction = Direction.forward,
) -> tuple[tuple[int, ...], tuple[int | None, ...]]:
    """
    Distance of every vertex from (forward) or to (reverse) the nearest vertex of `sources`.
    The nearest source is the lexicographic minimum of (distance, source id).
    @return: (dist, nearest source); empty `sources` gives INFINITY and None everywhere
    """
    dist = [INFINITY] * g.n
    nearest: list[int | None] = [None] * g.n
    heap = [(0, s, s) for s in sorted(set(sources))]
    heapq.heapify(heap)

    while heap:
        d, s, u = heapq.heappop(heap)
        if nearest[u] is not None:
            continue
        dist[u] = d
        nearest[u] = s
        if direction is Direction.forward:
            neighbors = ((arc.target, arc.weight) for arc in g.arcs(u))
        else:
            neighbors = ((arc.source, arc.weight) for arc in g.in_arcs[u])
        for v, weight in neighbors:
            if nearest[v] is None:
                heapq.heappush(heap, (d + weight, s, v))

    return tuple(dist), tuple(nearest)


def tree_path(result: SsspResult, v: int) -> list[int]:
    """
    Vertices of the tree path between the source and `v`, in travel order:
    source..v for forward trees, v..source for reverse trees.
    """
    if not result.reachable(v):
        raise ValueError(f"Vertex [{v}] unreachable from [{result.source}]")
    path = [v]
    while path[-1] != result.source:
        path.append(result.parent[path[-1]])
    if result.direction is Direction.forward:
        path.reverse()
    return path


def tree_path_ports(result: SsspResult, v: int) -> list[int]:
    """ports to follow along `tree_path`, one per edge"""
    path = tree_path(result, v)
    if result.direction is Direction.forward:
        return [result.parent_port[x] for x in path[1:]]
    return [result.parent_port[x] for x in path[:-1]]
