import math
from dataclasses import dataclass
from typing import Any

from common import Direction
from errors import NotATree, NotInSubtreeRecord
from graph.weighted_graph import WeightedGraph
from hierarchy.trees import SubTree


@dataclass(frozen=True)
class TreeLabel:
    """Destination label: DFS interval plus the light edges on the root path as (ancestor dfs_in, port)."""
    dfs_in: int
    dfs_out: int
    light_edges: tuple[tuple[int, int], ...] = ()

    @property
    def words(self) -> int:
        return 2 + 2 * len(self.light_edges)

    def to_json(self) -> list[Any]:
        return [self.dfs_in, self.dfs_out, [list(edge) for edge in self.light_edges]]

    @staticmethod
    def from_json(data: list[Any]) -> "TreeLabel":
        dfs_in, dfs_out, light = data
        return TreeLabel(dfs_in, dfs_out, tuple((a, p) for a, p in light))


@dataclass(frozen=True)
class TreeRecord:
    """Local record of one tree vertex."""
    dfs_in: int
    dfs_out: int
    parent_port: int | None
    """None at the root and in directed out-trees, which are only routed downward"""
    heavy_port: int | None = None
    heavy_in: int | None = None
    heavy_out: int | None = None

    def to_json(self) -> list[int | None]:
        return [self.dfs_in, self.dfs_out, self.parent_port, self.heavy_port, self.heavy_in, self.heavy_out]

    @staticmethod
    def from_json(data: list[int | None]) -> "TreeRecord":
        return TreeRecord(*data)


@dataclass(frozen=True)
class TreeScheme:
    root: int
    records: dict[int, TreeRecord]
    labels: dict[int, TreeLabel]

    @property
    def size(self) -> int:
        return len(self.records)

    def __contains__(self, v: int) -> bool:
        return v in self.records


def next_port(record: TreeRecord, label: TreeLabel) -> int | None:
    """
    Port toward the destination described by `label`, or None when the record's vertex is the destination.
    @raise NotInSubtreeRecord: the label is inconsistent with the record's position in the tree
    """
    if label.dfs_in == record.dfs_in:
        return None
    if not record.dfs_in < label.dfs_in <= record.dfs_out:
        if record.parent_port is None:
            raise NotInSubtreeRecord(f"Destination interval [{label.dfs_in}] outside subtree "
                                     f"[{record.dfs_in}, {record.dfs_out}] of a vertex with no way up")
        return record.parent_port
    if record.heavy_port is not None and record.heavy_in <= label.dfs_in <= record.heavy_out:
        return record.heavy_port
    for ancestor_in, port in label.light_edges:
        if ancestor_in == record.dfs_in:
            return port
    raise NotInSubtreeRecord(f"Label [{label.dfs_in}] has no light edge at ancestor [{record.dfs_in}]")


def build_tree_scheme(g: WeightedGraph, tree: SubTree) -> TreeScheme:
    """
    Interval and heavy-path routing over an out-tree (or an undirected tree).
    Children are visited in ascending port order; the heavy child is the one with the largest subtree,
    ties to the smaller id.
    @raise NotATree: the parent map has a cycle, misses the root, or uses a non-existent arc
    """
    if tree.direction is not Direction.forward and g.directed:
        raise NotATree(f"Tree of root [{tree.root}] points toward the root; only out-trees carry labels")

    children: dict[int, list[tuple[int, int]]] = {v: [] for v in tree.vertices}
    for child, parent in tree.parent.items():
        if parent not in children or not g.has_arc(parent, child):
            raise NotATree(f"Tree edge [{parent} -> {child}] is not an arc of the graph or leaves the tree")
        children[parent].append((g.port_to(parent, child), child))
    for kids in children.values():
        kids.sort()

    # preorder numbering
    dfs_in: dict[int, int] = {}
    preorder: list[int] = []
    stack = [tree.root]
    while stack:
        v = stack.pop()
        if v in dfs_in:
            raise NotATree(f"Vertex [{v}] reached twice from root [{tree.root}]")
        dfs_in[v] = len(preorder)
        preorder.append(v)
        stack.extend(child for _, child in reversed(children[v]))
    if len(preorder) != len(children):
        raise NotATree(f"[{len(children) - len(preorder)}] vertices do not reach root [{tree.root}]")

    size = {v: 1 for v in preorder}
    for v in reversed(preorder):
        if v != tree.root:
            size[tree.parent[v]] += size[v]

    heavy: dict[int, tuple[int, int] | None] = {
        v: min(kids, key=lambda pc: (-size[pc[1]], pc[1])) if kids else None
        for v, kids in children.items()
    }

    records: dict[int, TreeRecord] = {}
    labels: dict[int, TreeLabel] = {}
    for v in preorder:
        start = dfs_in[v]
        end = start + size[v] - 1
        parent_port = None
        if v != tree.root and not g.directed:
            parent_port = g.port_to(v, tree.parent[v])
        match heavy[v]:
            case (port, child):
                records[v] = TreeRecord(start, end, parent_port, port, dfs_in[child], dfs_in[child] + size[child] - 1)
            case None:
                records[v] = TreeRecord(start, end, parent_port)

        if v == tree.root:
            labels[v] = TreeLabel(start, end)
        else:
            parent = tree.parent[v]
            light = labels[parent].light_edges
            if heavy[parent][1] != v:
                light = light + ((dfs_in[parent], g.port_to(parent, v)),)
            labels[v] = TreeLabel(start, end, light)

    return TreeScheme(root=tree.root, records=records, labels=labels)


def route_in_tree(g: WeightedGraph, scheme: TreeScheme, source: int, destination: int) -> list[int]:
    """vertices visited when routing from `source` to `destination` by `next_port` alone"""
    label = scheme.labels[destination]
    path = [source]
    while (port := next_port(scheme.records[path[-1]], label)) is not None:
        path.append(g.arc_at(path[-1], port).target)
        if len(path) > scheme.size:
            raise NotInSubtreeRecord(f"Route [{source} -> {destination}] left the tree")
    return path


def light_edge_bound(tree_size: int) -> int:
    return int(math.floor(math.log2(tree_size))) if tree_size > 0 else 0
