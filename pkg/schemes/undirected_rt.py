from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from common import SchemeTag, logger
from errors import DirectedInput, MissingTreeRecord, NotInSubtreeRecord
from graph.oracle import RoundtripOracle
from hierarchy.builder import HierarchyBuild
from hierarchy.trees import extract_tree
from schemes.abstract import RoutingScheme, RoutingTable
from simulation.view import Decision, Deliver, Forward, LocalView, Step
from tree_routing.tree_scheme import TreeLabel, TreeRecord, TreeScheme, build_tree_scheme, next_port

CLUSTERS = "clusters"


@dataclass(frozen=True)
class ClusterEntry:
    """a vertex's record and own label in the cluster tree T(C(center))"""
    record: TreeRecord
    label: TreeLabel

    def to_json(self) -> list[Any]:
        return [self.record.to_json(), self.label.to_json()]

    @staticmethod
    def from_json(data: list[Any]) -> "ClusterEntry":
        return ClusterEntry(TreeRecord.from_json(data[0]), TreeLabel.from_json(data[1]))


@dataclass(frozen=True)
class PivotLabel:
    """L(u): for every level i, the pivot p_i(u) and u's label in T(C(p_i(u)))"""
    vertex: int
    pivots: tuple[int, ...]
    tree_labels: tuple[TreeLabel, ...]

    @property
    def words(self) -> int:
        return 1 + len(self.pivots) + sum(label.words for label in self.tree_labels)

    def to_json(self) -> list[Any]:
        return [self.vertex, list(self.pivots), [label.to_json() for label in self.tree_labels]]

    @staticmethod
    def from_json(data: list[Any]) -> "PivotLabel":
        vertex, pivots, labels = data
        return PivotLabel(vertex, tuple(pivots), tuple(TreeLabel.from_json(label) for label in labels))


@dataclass(frozen=True)
class TreeHeader:
    tree: int
    """center of the cluster tree the message travels in"""
    target: TreeLabel

    @property
    def words(self) -> int:
        return 1 + self.target.words


def build_cluster_trees(oracle: RoundtripOracle, build: HierarchyBuild) -> dict[int, TreeScheme]:
    """one routing tree T(C(w)) per center w, built from w's shortest-path tree"""
    return {
        w: build_tree_scheme(oracle.graph, extract_tree(oracle, w, build.clusters.cluster(w)))
        for w in range(oracle.graph.n)
    }


def cluster_tables(trees: dict[int, TreeScheme], build: HierarchyBuild) -> list[RoutingTable]:
    """RT(u) = {own record and label in T(C(w)) | w ∈ B(u)}"""
    tables: list[RoutingTable] = []
    for u in range(build.hierarchy.n):
        entries = {}
        for w in build.bunches.union(u):
            tree = trees[w]
            if u not in tree:
                raise MissingTreeRecord(f"Vertex [{u}] has center [{w}] in its bunch but is not in its tree")
            entries[w] = ClusterEntry(tree.records[u], tree.labels[u])
        tables.append({CLUSTERS: entries})
    return tables


def pivot_labels(trees: dict[int, TreeScheme], build: HierarchyBuild) -> list[PivotLabel]:
    labels = []
    hierarchy = build.hierarchy
    for u in range(hierarchy.n):
        pivots = hierarchy.pivots[u]
        for pivot in pivots:
            if u not in trees[pivot]:
                raise MissingTreeRecord(f"Vertex [{u}] is missing from the tree of its pivot [{pivot}]")
        labels.append(PivotLabel(u, pivots, tuple(trees[pivot].labels[u] for pivot in pivots)))
    return labels


def select_level(centers: Mapping[int, Any], label: Any) -> int:
    """ℓ = min{i | p_i(v) ∈ B(u)}, with B(u) given by the keys of u's cluster entries"""
    for level, pivot in enumerate(label.pivots):
        if pivot in centers:
            return level
    raise MissingTreeRecord(f"No pivot of [{label.vertex}] is a center known here")


def route_step(view: LocalView) -> Step:
    dest = view.dest_label
    if view.vertex == dest.vertex:
        return Deliver()

    header: TreeHeader | None = view.header
    events: tuple[Decision, ...] = ()
    clusters = view.table(CLUSTERS)
    if header is None:
        level = select_level(clusters, dest)
        header = TreeHeader(tree=dest.pivots[level], target=dest.tree_labels[level])
        events = (Decision("level", {"level": level, "tree": header.tree}),)

    entry = clusters.get(header.tree)
    if entry is None:
        raise MissingTreeRecord(f"Vertex [{view.vertex}] has no record for tree [{header.tree}]")
    port = next_port(entry.record, header.target)
    if port is None:
        raise NotInSubtreeRecord(f"Tree [{header.tree}] delivered at [{view.vertex}], not at [{dest.vertex}]")
    return Forward(port, header, events)


class UndirectedRtScheme(RoutingScheme):
    FAMILIES = {CLUSTERS: ClusterEntry}
    LABEL = PivotLabel

    @property
    def tag(self) -> SchemeTag:
        return SchemeTag.UNDIRECTED_RT

    @property
    def roundtrip_bound(self) -> Fraction:
        return Fraction(2 * self.k - 1)

    @property
    def oneway_bound(self) -> Fraction:
        return Fraction(4 * self.k - 3)

    def step(self, view: LocalView) -> Step:
        return route_step(view)


def preprocess(oracle: RoundtripOracle, build: HierarchyBuild, dummy: int | None = None) -> UndirectedRtScheme:
    """
    Builds a cluster tree for every center, gives each vertex the records of the trees of its bunch,
    and labels each vertex with its pivots and its labels in their trees.
    @raise DirectedInput: the graph is directed
    """
    g = oracle.graph
    if g.directed:
        raise DirectedInput("The undirected roundtrip scheme needs an undirected graph")
    trees = build_cluster_trees(oracle, build)
    tables = cluster_tables(trees, build)
    labels = pivot_labels(trees, build)
    logger.info(f"Undirected roundtrip scheme ready: n [{g.n}], k [{build.hierarchy.k}], "
                f"table entries [{sum(len(t[CLUSTERS]) for t in tables)}]")
    return UndirectedRtScheme(g, build.hierarchy, tables, labels, dummy)
