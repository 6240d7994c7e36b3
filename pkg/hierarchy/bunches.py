from bisect import bisect_left
from dataclasses import dataclass
from typing import Any

from hierarchy.levels import Hierarchy, RoundtripOrder


def _contains(sorted_ids: tuple[int, ...], x: int) -> bool:
    position = bisect_left(sorted_ids, x)
    return position < len(sorted_ids) and sorted_ids[position] == x


@dataclass(frozen=True)
class BunchSet:
    by_level: tuple[tuple[tuple[int, ...], ...], ...]
    """by_level[u][i] = B_i(u), sorted"""

    @property
    def n(self) -> int:
        return len(self.by_level)

    def bunch(self, u: int, i: int) -> tuple[int, ...]:
        return self.by_level[u][i]

    def union(self, u: int) -> tuple[int, ...]:
        return tuple(sorted(w for level in self.by_level[u] for w in level))

    def contains(self, u: int, w: int, level: int | None = None) -> bool:
        """w ∈ B(u), or w ∈ B_level(u) when a level is given"""
        if level is not None:
            return _contains(self.by_level[u][level], w)
        return any(_contains(members, w) for members in self.by_level[u])

    def size(self, u: int) -> int:
        return sum(len(level) for level in self.by_level[u])

    def total(self) -> int:
        return sum(self.size(u) for u in range(self.n))


@dataclass(frozen=True)
class ClusterSet:
    members: tuple[tuple[int, ...], ...]
    """members[w] = C(w), sorted; every vertex is a center at its top level"""

    def cluster(self, w: int) -> tuple[int, ...]:
        return self.members[w]

    def contains(self, w: int, v: int) -> bool:
        return _contains(self.members[w], v)

    def total(self) -> int:
        return sum(len(c) for c in self.members)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.members]

    @staticmethod
    def from_json(data: list[list[int]]) -> "ClusterSet":
        return ClusterSet(members=tuple(tuple(c) for c in data))


def compute_bunches(hierarchy: Hierarchy, order: RoundtripOrder) -> BunchSet:
    """B_i(u) = A_i vertices that u sees strictly before p_{i+1}(u)"""
    by_level = []
    for u in range(hierarchy.n):
        per_level = []
        for i in range(hierarchy.k):
            threshold = hierarchy.pivot(u, i + 1)
            per_level.append(tuple(w for w in hierarchy.levels[i] if order.precedes(u, w, threshold)))
        by_level.append(tuple(per_level))
    return BunchSet(by_level=tuple(by_level))


def in_cluster(hierarchy: Hierarchy, order: RoundtripOrder, w: int, v: int, level: int | None = None) -> bool:
    """
    v ∈ C(w, A_{level+1}), i.e. v sees w strictly before its level+1 pivot.
    `level` defaults to the top level of w, which gives the cluster C(w) of the hierarchy.
    """
    if level is None:
        level = hierarchy.top_level(w)
    return order.precedes(v, w, hierarchy.pivot(v, level + 1))


def compute_clusters(hierarchy: Hierarchy, order: RoundtripOrder) -> ClusterSet:
    members = tuple(
        tuple(v for v in range(hierarchy.n) if in_cluster(hierarchy, order, w, v))
        for w in range(hierarchy.n)
    )
    return ClusterSet(members=members)


def bunches_to_json(bunches: BunchSet) -> list[list[list[int]]]:
    return [[list(level) for level in per_vertex] for per_vertex in bunches.by_level]


def bunches_from_json(data: Any) -> BunchSet:
    return BunchSet(by_level=tuple(tuple(tuple(level) for level in per_vertex) for per_vertex in data))
