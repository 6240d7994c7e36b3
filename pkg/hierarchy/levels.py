import math
import random
from dataclasses import dataclass, field
from typing import Any

from common import Direction, INFINITY, logger
from graph.oracle import RoundtripOracle
from graph.shortest_paths import multi_source_dijkstra


@dataclass(frozen=True)
class Hierarchy:
    """
    Nested samples A_0 = V ⊇ A_1 ⊇ ... ⊇ A_k = ∅ with per-vertex pivots.
    Per-vertex tuples are indexed by level: `pivots[u][i]` = p_i(u) for i < k,
    `h[u][i]` = d(u, A_i) and `rt_pivot[u][i]` = d(u↔p_i(u)) for i <= k (INFINITY at level k).
    """
    k: int
    directed: bool
    seed: int
    levels: tuple[tuple[int, ...], ...]
    pivots: tuple[tuple[int, ...], ...]
    h: tuple[tuple[int, ...], ...]
    rt_pivot: tuple[tuple[int, ...], ...]
    _top_levels: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        top = [0] * len(self.pivots)
        for i, level in enumerate(self.levels):
            for u in level:
                top[u] = i
        object.__setattr__(self, "_top_levels", tuple(top))

    @property
    def n(self) -> int:
        return len(self.pivots)

    def top_level(self, u: int) -> int:
        """largest i with u ∈ A_i"""
        return self._top_levels[u]

    def pivot(self, u: int, i: int) -> int | None:
        """p_i(u); None at level k, whose set is empty"""
        return self.pivots[u][i] if i < self.k else None

    def in_level(self, u: int, i: int) -> bool:
        return i < self.k and self._top_levels[u] >= i

    def level_sizes(self) -> list[int]:
        return [len(level) for level in self.levels]

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "directed": self.directed,
            "seed": self.seed,
            "levels": [list(level) for level in self.levels],
            "pivots": [list(p) for p in self.pivots],
            "h": [[None if x == INFINITY else x for x in row] for row in self.h],
            "rt_pivot": [[None if x == INFINITY else x for x in row] for row in self.rt_pivot],
        }

    @staticmethod
    def from_json(data: dict[str, Any]) -> "Hierarchy":
        return Hierarchy(
            k=data["k"],
            directed=data["directed"],
            seed=data["seed"],
            levels=tuple(tuple(level) for level in data["levels"]),
            pivots=tuple(tuple(p) for p in data["pivots"]),
            h=tuple(tuple(INFINITY if x is None else x for x in row) for row in data["h"]),
            rt_pivot=tuple(tuple(INFINITY if x is None else x for x in row) for row in data["rt_pivot"]),
        )


class RoundtripOrder:
    """
    The order in which a vertex v sees other vertices.
    Undirected graphs compare roundtrip distances only.
    Directed graphs compare (d(v↔x), d(x→v), x) lexicographically, a strict total order per v.
    """

    def __init__(self, oracle: RoundtripOracle):
        self._oracle = oracle
        self._directed = oracle.graph.directed

    @property
    def oracle(self) -> RoundtripOracle:
        return self._oracle

    def key(self, v: int, x: int) -> tuple[int, int, int]:
        return self._oracle.roundtrip(v, x), self._oracle.distance(x, v), x

    def precedes(self, v: int, x: int, y: int | None) -> bool:
        """whether x comes strictly before y for v; y None stands for the empty set"""
        if y is None:
            return True
        if self._directed:
            return self.key(v, x) < self.key(v, y)
        return self._oracle.roundtrip(v, x) < self._oracle.roundtrip(v, y)


def sample_levels(n: int, k: int, seed: int) -> tuple[tuple[int, ...], ...]:
    """A_{i+1} keeps each member of A_i independently with probability n^(-1/k); A_k is empty"""
    rng = random.Random(seed)
    keep = n ** (-1 / k)
    levels = [tuple(range(n))]
    for i in range(1, k):
        levels.append(tuple(x for x in levels[-1] if rng.random() < keep))
    levels.append(())
    return tuple(levels)


def compute_pivots(
        oracle: RoundtripOracle,
        levels: tuple[tuple[int, ...], ...],
) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """
    Pivots p_i(u), one-way distances h_i(u) = d(u, A_i) and pivot roundtrips d(u↔p_i(u)).

    Undirected pivots are the nearest A_i vertex with ties to the smaller id, except that a tie with the
    next level keeps the higher-level pivot (h_i(u) = h_{i+1}(u) gives p_i(u) = p_{i+1}(u)),
    which keeps u inside the cluster of each of its pivots.
    Directed pivots are the first A_i vertex in u's roundtrip order.

    @return: (pivots, h, rt_pivot) as stored in `Hierarchy`
    """
    g = oracle.graph
    k = len(levels) - 1
    n = g.n

    h_by_level: list[tuple[int, ...]] = []
    nearest_by_level: list[tuple[int | None, ...]] = []
    for level in levels[:k]:
        dist, nearest = multi_source_dijkstra(g, level, Direction.reverse)
        h_by_level.append(dist)
        nearest_by_level.append(nearest)

    pivots = [[0] * k for _ in range(n)]
    if g.directed:
        order = RoundtripOrder(oracle)
        for u in range(n):
            for i in range(k):
                pivots[u][i] = u if i == 0 else min(levels[i], key=lambda x: order.key(u, x))
    else:
        for u in range(n):
            for i in reversed(range(k)):
                if i + 1 < k and h_by_level[i][u] == h_by_level[i + 1][u]:
                    pivots[u][i] = pivots[u][i + 1]
                else:
                    pivots[u][i] = nearest_by_level[i][u]

    h = tuple(tuple(h_by_level[i][u] for i in range(k)) + (INFINITY,) for u in range(n))
    rt_pivot = tuple(
        tuple(oracle.roundtrip(u, pivots[u][i]) for i in range(k)) + (INFINITY,)
        for u in range(n)
    )
    return tuple(tuple(p) for p in pivots), h, rt_pivot


def bunch_budget(n: int, k: int, size_budget: float) -> float:
    return size_budget * k * n ** (1 / k) * math.log(n + 1)


def log_level_sizes(levels: tuple[tuple[int, ...], ...], n: int) -> None:
    k = len(levels) - 1
    for i, level in enumerate(levels):
        logger.debug(f"Level [{i}]: [{len(level)}] vertices, target [{n ** (1 - i / k):.1f}]")
