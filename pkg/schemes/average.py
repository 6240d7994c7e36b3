from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any

from common import INFINITY, SchemeTag, logger
from errors import ClientError, DirectedInput, MissingTreeRecord, NotInSubtreeRecord
from graph.oracle import RoundtripOracle
from hierarchy.builder import HierarchyBuild
from schemes.abstract import RoutingScheme, RoutingTable
from schemes.undirected_rt import CLUSTERS, ClusterEntry, build_cluster_trees, cluster_tables, select_level
from simulation.view import Decision, Deliver, Forward, LocalView, Step
from tree_routing.tree_scheme import TreeLabel, next_port

MEMBERS = "members"
EXACT_K_LIMIT: int = 30
"""largest k whose bounds are computed with exact rationals; their denominators grow exponentially in k"""


@lru_cache(maxsize=None)
def _c_sequence(a: int) -> tuple[Fraction, ...]:
    values = [Fraction(1)]
    total = Fraction(1)
    for i in range(1, a + 1):
        c = 2 - Fraction(a - i) / (a + total)
        values.append(c)
        total += c
    return tuple(values)


def c_sequence(a: int) -> list[Fraction]:
    """
    Detour thresholds c_0..c_a: c_0 = 1 and c_i = 2 - (a - i) / (a + c_0 + ... + c_{i-1}).
    Exact rationals, so c_a = 2 exactly for a >= 1.
    """
    if a < 0:
        raise ValueError(f"Sequence length parameter must be non-negative, got [{a}]")
    return list(_c_sequence(a))


def _c_sum_float(a: int) -> float:
    total = 1.0
    for i in range(1, a + 1):
        total += 2 - (a - i) / (a + total)
    return total


def level_stretch_bound(level: int) -> Fraction:
    """one-way stretch of a route whose selected level is `level`: 2a+1+2Σc for level 2a+1, 2a-1+2Σc for level 2a"""
    if level >= EXACT_K_LIMIT:
        raise ValueError(f"Exact bounds stop at level [{EXACT_K_LIMIT - 1}], got [{level}]")
    a = level // 2
    total = sum(_c_sequence(a))
    return 2 * total + 2 * a + (1 if level % 2 else -1)


def stretch_bound(k: int, exact: bool = True) -> Fraction | float:
    """
    Worst one-way stretch of the adaptive scheme with k levels, reached at the top selected level k-1.
    Exact rationals up to `EXACT_K_LIMIT`; `exact=False` sums the sequence in floating point for any k.
    """
    if k < 2:
        raise ValueError(f"Stretch bound needs k >= 2, got [{k}]")
    if exact:
        return level_stretch_bound(k - 1)
    a = (k - 1) // 2
    return 2 * _c_sum_float(a) + 2 * a + (1 if k % 2 == 0 else -1)


@dataclass(frozen=True)
class AvgLabel:
    """L(u): per level the pivot p_i(u), the distance h_i(u) and u's label in T(C(p_i(u)))"""
    vertex: int
    pivots: tuple[int, ...]
    h: tuple[int, ...]
    tree_labels: tuple[TreeLabel, ...]

    @property
    def words(self) -> int:
        return 1 + 2 * len(self.pivots) + sum(label.words for label in self.tree_labels)

    def to_json(self) -> list[Any]:
        return [self.vertex, list(self.pivots), list(self.h), [label.to_json() for label in self.tree_labels]]

    @staticmethod
    def from_json(data: list[Any]) -> "AvgLabel":
        vertex, pivots, h, labels = data
        return AvgLabel(vertex, tuple(pivots), tuple(h), tuple(TreeLabel.from_json(label) for label in labels))


class Phase(Enum):
    TO_PIVOT = "to-pivot"
    RETURN = "return"
    TO_DESTINATION = "to-destination"
    FINAL = "final"


@dataclass(frozen=True)
class AvgHeader:
    phase: Phase
    level: int
    iteration: int
    retries: int
    estimate: int
    """δ̂_r, a lower bound on d(u, v)"""
    tree: int
    target: TreeLabel | None
    return_label: TreeLabel | None
    source_h: tuple[int, ...]
    dest_h: tuple[int, ...]
    oracle: bool = False

    @property
    def words(self) -> int:
        labels = [label for label in (self.target, self.return_label) if label is not None]
        return 7 + len(self.source_h) + len(self.dest_h) + sum(label.words for label in labels)

    def dest_h_at(self, i: int) -> int:
        return self.dest_h[i] if i < len(self.dest_h) else INFINITY


def initial_estimate(source_h: tuple[int, ...], dest_h: tuple[int, ...], level: int) -> int:
    """δ̂_0 = max over 0 <= i < level of h_{i+1}(u) - h_i(v); 0 when level = 0"""
    return max((source_h[i + 1] - dest_h[i] for i in range(level)), default=0)


def _next_iteration(view: LocalView, header: AvgHeader, start: int, events: list[Decision]) -> AvgHeader:
    """runs the detour loop at the source from iteration `start`; yields a to-pivot or the final header"""
    own = view.own_label
    a = header.level // 2
    c = _c_sequence(a)
    for i in range(start, a + 1):
        threshold = header.dest_h_at(2 * i + 1)
        if threshold == INFINITY or threshold > header.source_h[2 * i] + c[i] * header.estimate:
            pivot = own.pivots[2 * i]
            events.append(Decision("detour", {"i": i, "pivot": pivot}))
            return replace(header, phase=Phase.TO_PIVOT, iteration=i, tree=pivot, target=None,
                           return_label=own.tree_labels[2 * i])
    dest = view.dest_label
    events.append(Decision("final", {"tree": dest.pivots[header.level]}))
    return replace(header, phase=Phase.FINAL, tree=dest.pivots[header.level],
                   target=dest.tree_labels[header.level], return_label=None)


def _start(view: LocalView, events: list[Decision]) -> AvgHeader:
    own, dest = view.own_label, view.dest_label
    level = select_level(view.table(CLUSTERS), dest)
    header = AvgHeader(
        phase=Phase.FINAL, level=level, iteration=0, retries=0,
        estimate=initial_estimate(own.h, dest.h, level),
        tree=dest.pivots[level], target=None, return_label=None,
        source_h=tuple(own.h), dest_h=tuple(dest.h),
    )
    events.append(Decision("level", {"level": level, "a": level // 2}))
    events.append(Decision("delta", {"r": 0, "value": header.estimate}))
    return _next_iteration(view, header, 0, events)


def _start_with_distance(view: LocalView, distance: int, events: list[Decision]) -> AvgHeader:
    """
    Picks the first level i where the destination's pivot p_i(v) is a center of u's whole bunch B(u), or where
    h_{i+1}(v) > h_i(u) + d(u, v). Membership is tested against B(u), not only B_i(u): u is in the tree of every
    center of B(u), and the stretch of level i stays 2i+1 either way. The second test routes through u's own
    pivot p_i(u), whose cluster then holds v, instead of the direct tree path.
    """
    own, dest = view.own_label, view.dest_label
    bunch_centers = view.table(CLUSTERS)
    k = len(dest.pivots)
    header = AvgHeader(
        phase=Phase.FINAL, level=0, iteration=0, retries=0, estimate=distance,
        tree=dest.pivots[0], target=None, return_label=None,
        source_h=tuple(own.h), dest_h=tuple(dest.h), oracle=True,
    )
    for i in range(k):
        if dest.pivots[i] in bunch_centers:
            events.append(Decision("final", {"i": i, "tree": dest.pivots[i]}))
            return replace(header, level=i, tree=dest.pivots[i], target=dest.tree_labels[i])
        if header.dest_h_at(i + 1) > own.h[i] + distance:
            events.append(Decision("detour", {"i": i, "pivot": own.pivots[i]}))
            return replace(header, phase=Phase.TO_PIVOT, level=i, iteration=i, tree=own.pivots[i])
    raise MissingTreeRecord(f"No level selected at [{view.vertex}] for [{dest.vertex}]")


def _drive(view: LocalView, header: AvgHeader, events: list[Decision]) -> Step:
    clusters = view.table(CLUSTERS)
    while True:
        entry: ClusterEntry | None = clusters.get(header.tree)
        if entry is None:
            raise MissingTreeRecord(f"Vertex [{view.vertex}] has no record for tree [{header.tree}]")

        if header.phase is Phase.TO_PIVOT:
            if entry.record.parent_port is not None:
                return Forward(entry.record.parent_port, header, tuple(events))
            member_label = view.table(MEMBERS).get(view.dest_label.vertex)
            events.append(Decision("pivot", {"pivot": view.vertex, "hit": member_label is not None}))
            if member_label is not None:
                header = replace(header, phase=Phase.TO_DESTINATION, target=member_label)
                continue
            if header.oracle:
                raise MissingTreeRecord(f"Destination [{view.dest_label.vertex}] missing from the cluster of "
                                        f"[{view.vertex}] although the distance test selected it")
            i = header.iteration
            estimate = header.dest_h_at(2 * i + 1) - header.source_h[2 * i]
            events.append(Decision("delta", {
                "r": header.retries + 1,
                "j": i,
                "value": estimate,
                "previous": header.estimate,
                "c": _c_sequence(header.level // 2)[i],
            }))
            header = replace(header, phase=Phase.RETURN, retries=header.retries + 1, estimate=estimate,
                             target=header.return_label)
            continue

        port = next_port(entry.record, header.target)
        if port is not None:
            return Forward(port, header, tuple(events))
        if header.phase is not Phase.RETURN:
            raise NotInSubtreeRecord(f"Tree [{header.tree}] delivered at [{view.vertex}], "
                                     f"not at [{view.dest_label.vertex}]")
        header = _next_iteration(view, header, header.iteration + 1, events)


def route_avg_step(view: LocalView) -> Step:
    if view.vertex == view.dest_label.vertex:
        return Deliver()
    events: list[Decision] = []
    header = view.header if view.header is not None else _start(view, events)
    return _drive(view, header, events)


def route_avg_oracle_step(view: LocalView) -> Step:
    """same tables, but the source picks its tree with the true distance supplied in `view.distance_hint`"""
    if view.vertex == view.dest_label.vertex:
        return Deliver()
    events: list[Decision] = []
    header = view.header
    if header is None:
        if view.distance_hint is None:
            raise ValueError("The oracle-assisted route needs the source-destination distance")
        header = _start_with_distance(view, view.distance_hint, events)
    return _drive(view, header, events)


class AverageScheme(RoutingScheme):
    FAMILIES = {CLUSTERS: ClusterEntry, MEMBERS: TreeLabel}
    LABEL = AvgLabel

    @property
    def tag(self) -> SchemeTag:
        return SchemeTag.AVERAGE

    @property
    def oneway_bound(self) -> Fraction:
        return stretch_bound(self.k) if self.k >= 2 else Fraction(1)

    def step(self, view: LocalView) -> Step:
        return route_avg_step(view)


class AverageOracleScheme(AverageScheme):

    @property
    def tag(self) -> SchemeTag:
        return SchemeTag.AVERAGE_ORACLE

    @property
    def oneway_bound(self) -> Fraction:
        return Fraction(2 * self.k - 1)

    @property
    def needs_distance_hint(self) -> bool:
        return True

    def step(self, view: LocalView) -> Step:
        return route_avg_oracle_step(view)


def preprocess_avg(oracle: RoundtripOracle, build: HierarchyBuild, dummy: int | None = None,
                   with_distance_hint: bool = False) -> AverageScheme:
    """
    Cluster-tree tables as in the undirected roundtrip scheme, plus, at every center, the labels of its
    cluster members so a detour reaching the center can tell whether the destination is in its cluster.
    @raise DirectedInput: the graph is directed
    @raise ClientError: more levels than the exact stretch bound supports
    """
    g = oracle.graph
    if g.directed:
        raise DirectedInput("The average-storage scheme needs an undirected graph")
    hierarchy = build.hierarchy
    if hierarchy.k > EXACT_K_LIMIT:
        raise ClientError(f"The average-storage scheme supports at most [{EXACT_K_LIMIT}] levels, "
                          f"got [{hierarchy.k}]")
    trees = build_cluster_trees(oracle, build)
    tables: list[RoutingTable] = cluster_tables(trees, build)
    for u, table in enumerate(tables):
        table[MEMBERS] = {w: trees[u].labels[w] for w in build.clusters.cluster(u)}

    labels = []
    for u in range(g.n):
        pivots = hierarchy.pivots[u]
        labels.append(AvgLabel(u, pivots, hierarchy.h[u][:hierarchy.k],
                               tuple(trees[pivot].labels[u] for pivot in pivots)))

    scheme_type = AverageOracleScheme if with_distance_hint else AverageScheme
    scheme = scheme_type(g, hierarchy, tables, labels, dummy)
    logger.info(f"Average-storage scheme ready: n [{g.n}], k [{hierarchy.k}], "
                f"average table entries [{scheme.total_entries() / g.n:.1f}]")
    return scheme
