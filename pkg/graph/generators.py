import math
import random

import networkx as nx

from common import GraphKind, logger
from errors import ClientError, GenerationFailed
from graph.weighted_graph import WeightedGraph

MAX_ATTEMPTS: int = 100


def generate(
        kind: GraphKind,
        n: int,
        density: float,
        weight_range: tuple[int, int] = (1, 100),
        seed: int = 0,
        max_attempts: int = MAX_ATTEMPTS,
) -> WeightedGraph:
    """
    Seeded random test graph.

    - `erdos-renyi`: G(n, p) with p = density, resampled until connected
    - `random-geometric`: unit-square geometric graph with radius = density, resampled until connected;
       weights grow with euclidean edge length
    - `directed-strongly-connected`: a random Hamiltonian cycle plus every other arc with probability density

    @param weight_range: inclusive (min, max) integer weights
    @raise GenerationFailed: no connected sample within `max_attempts`
    """
    # validation
    if n < 2:
        raise ClientError(f"Need at least 2 vertices, got [{n}]")
    w_min, w_max = weight_range
    if not 1 <= w_min <= w_max:
        raise ClientError(f"Invalid weight range [{w_min}, {w_max}]")

    rng = random.Random(seed)
    match kind:
        case GraphKind.DIRECTED:
            return _strongly_connected(n, density, w_min, w_max, rng)
        case GraphKind.ERDOS_RENYI if n == 2:
            return WeightedGraph(2, False, [(0, 1, rng.randint(w_min, w_max))])
        case GraphKind.ERDOS_RENYI | GraphKind.RANDOM_GEOMETRIC:
            for attempt in range(max_attempts):
                graph_seed = rng.randrange(2 ** 32)
                if kind is GraphKind.ERDOS_RENYI:
                    sample = nx.gnp_random_graph(n, density, seed=graph_seed)
                else:
                    sample = nx.random_geometric_graph(n, density, seed=graph_seed)
                if nx.is_connected(sample):
                    logger.debug(f"Connected [{kind.value}] sample after [{attempt + 1}] attempts")
                    return _weighted(sample, kind, density, w_min, w_max, rng)
            raise GenerationFailed(f"No connected [{kind.value}] graph with n [{n}], density [{density}] "
                                   f"after [{max_attempts}] attempts")


def _weighted(sample: nx.Graph, kind: GraphKind, radius: float, w_min: int, w_max: int,
              rng: random.Random) -> WeightedGraph:
    edges = []
    for u, v in sorted(sample.edges()):
        if kind is GraphKind.RANDOM_GEOMETRIC:
            length = math.dist(sample.nodes[u]["pos"], sample.nodes[v]["pos"])
            weight = w_min + round(min(length / radius, 1.0) * (w_max - w_min))
        else:
            weight = rng.randint(w_min, w_max)
        edges.append((u, v, weight))
    return WeightedGraph(sample.number_of_nodes(), False, edges)


def _strongly_connected(n: int, density: float, w_min: int, w_max: int, rng: random.Random) -> WeightedGraph:
    order = list(range(n))
    rng.shuffle(order)
    arcs = {(order[i], order[(i + 1) % n]) for i in range(n)}
    for u in range(n):
        for v in range(n):
            if u != v and (u, v) not in arcs and rng.random() < density:
                arcs.add((u, v))
    return WeightedGraph(n, True, [(u, v, rng.randint(w_min, w_max)) for u, v in sorted(arcs)])
