from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any

from common import Direction, SchemeTag, logger
from errors import ClientError, MissingTreeRecord, NotInSubtreeRecord, NotStronglyConnected
from graph.oracle import RoundtripOracle
from graph.shortest_paths import tree_path
from graph.weighted_graph import is_connected
from hierarchy.builder import HierarchyBuild
from schemes.abstract import RoutingScheme, RoutingTable
from simulation.view import Decision, Deliver, Forward, LocalView, Step
from tree_routing.double_tree import DoubleTreeScheme, build_double_tree
from tree_routing.tree_scheme import TreeLabel, TreeRecord, next_port

# table families
BALL_LABELS = "a"
"""labels of the members of the own ball tree T(B_0(u)), keyed by member"""
BALL_RECORDS = "b"
"""own records in every ball tree T(B_0(w)) containing u, keyed by w"""
TOP_RECORDS = "c"
"""own records in the spanning trees T(C(y)) = T(y, V), y ∈ A_2"""
CLEAN_RECORDS = "d"
"""own records in T(C(w)) for w ∈ B_1(u) whose path P(u, w) stays inside C(w)"""
DETOURS = "e"
"""for the other w ∈ B_1(u): the spanning tree to detour through and w's label in it"""


@dataclass(frozen=True)
class DoubleRecord:
    out: TreeRecord | None
    """record in the out-part, None when the vertex is only on the in-part"""
    in_port: int | None
    """successor port toward the root, None at the root or off the in-part"""
    member: bool
    """whether the vertex belongs to the member set the tree serves"""

    def to_json(self) -> list[Any]:
        return [None if self.out is None else self.out.to_json(), self.in_port, self.member]

    @staticmethod
    def from_json(data: list[Any]) -> "DoubleRecord":
        out, in_port, member = data
        return DoubleRecord(None if out is None else TreeRecord.from_json(out), in_port, member)


@dataclass(frozen=True)
class DetourEntry:
    tree: int
    label: TreeLabel

    def to_json(self) -> list[Any]:
        return [self.tree, self.label.to_json()]

    @staticmethod
    def from_json(data: list[Any]) -> "DetourEntry":
        return DetourEntry(data[0], TreeLabel.from_json(data[1]))


@dataclass(frozen=True)
class SevenLabel:
    vertex: int
    pivot1: int
    pivot2: int
    ball_label: TreeLabel
    """own label in T(B_0(u)), where u is the root"""
    pivot_port: int | None
    """port at p_1(u) of the first edge of its shortest path to u"""
    top_label: TreeLabel
    """own label in T(C(p_2(u)))"""

    @property
    def words(self) -> int:
        return 4 + self.ball_label.words + self.top_label.words

    def to_json(self) -> list[Any]:
        return [self.vertex, self.pivot1, self.pivot2, self.ball_label.to_json(), self.pivot_port,
                self.top_label.to_json()]

    @staticmethod
    def from_json(data: list[Any]) -> "SevenLabel":
        vertex, pivot1, pivot2, ball_label, pivot_port, top_label = data
        return SevenLabel(vertex, pivot1, pivot2, TreeLabel.from_json(ball_label), pivot_port,
                          TreeLabel.from_json(top_label))


@dataclass(frozen=True)
class Leg:
    family: str
    tree: int
    target: TreeLabel | None
    """destination label in the out-part; None routes up to the root"""
    entry: tuple[int, int] | None = None
    """(vertex, port) to use where that vertex keeps no in-port for this tree"""

    @property
    def words(self) -> int:
        return 2 + (self.target.words if self.target else 0) + (2 if self.entry else 0)


@dataclass(frozen=True)
class LegHeader:
    legs: tuple[Leg, ...]
    current: int = 0

    @property
    def words(self) -> int:
        return 1 + sum(leg.words for leg in self.legs)


def _plan(view: LocalView) -> tuple[LegHeader, str]:
    dest = view.dest_label
    v = dest.vertex

    ball_labels = view.table(BALL_LABELS)
    if v in ball_labels:
        return LegHeader((Leg(BALL_RECORDS, view.vertex, ball_labels[v]),)), "own-ball"

    ball_record = view.table(BALL_RECORDS).get(v)
    if ball_record is not None and ball_record.member:
        return LegHeader((Leg(BALL_RECORDS, v, None),)), "destination-ball"

    p1 = dest.pivot1
    entry = None if dest.pivot_port is None else (p1, dest.pivot_port)
    to_destination = Leg(BALL_RECORDS, v, None, entry)
    if p1 in view.table(CLEAN_RECORDS):
        return LegHeader((Leg(CLEAN_RECORDS, p1, None), to_destination)), "pivot-cluster"
    detour = view.table(DETOURS).get(p1)
    if detour is not None:
        return LegHeader((
            Leg(TOP_RECORDS, detour.tree, None),
            Leg(TOP_RECORDS, detour.tree, detour.label),
            to_destination,
        )), "pivot-detour"

    p2 = dest.pivot2
    return LegHeader((Leg(TOP_RECORDS, p2, None), Leg(TOP_RECORDS, p2, dest.top_label))), "top-tree"


def _leg_port(view: LocalView, leg: Leg) -> int | None:
    """next port of the leg, None once the leg's end is reached"""
    record = view.table(leg.family).get(leg.tree)
    if leg.target is None:
        if view.vertex == leg.tree:
            return None
        if record is not None and record.in_port is not None:
            return record.in_port
        if leg.entry is not None and leg.entry[0] == view.vertex:
            return leg.entry[1]
        raise MissingTreeRecord(f"Vertex [{view.vertex}] has no way up tree [{leg.family}:{leg.tree}]")
    if record is None or record.out is None:
        raise MissingTreeRecord(f"Vertex [{view.vertex}] has no record in tree [{leg.family}:{leg.tree}]")
    return next_port(record.out, leg.target)


def route7_step(view: LocalView) -> Step:
    dest = view.dest_label
    if view.vertex == dest.vertex:
        return Deliver()

    header: LegHeader | None = view.header
    events: list[Decision] = []
    if header is None:
        header, case = _plan(view)
        events.append(Decision("case", {"case": case, "legs": len(header.legs)}))

    while (port := _leg_port(view, header.legs[header.current])) is None:
        if header.current + 1 == len(header.legs):
            raise NotInSubtreeRecord(f"Last leg ended at [{view.vertex}], not at [{dest.vertex}]")
        header = replace(header, current=header.current + 1)
        leg = header.legs[header.current]
        events.append(Decision("leg", {"leg": header.current, "tree": f"{leg.family}:{leg.tree}"}))
    return Forward(port, header, tuple(events))


class DirectedSevenScheme(RoutingScheme):
    FAMILIES = {
        BALL_LABELS: TreeLabel,
        BALL_RECORDS: DoubleRecord,
        TOP_RECORDS: DoubleRecord,
        CLEAN_RECORDS: DoubleRecord,
        DETOURS: DetourEntry,
    }
    LABEL = SevenLabel

    @property
    def tag(self) -> SchemeTag:
        return SchemeTag.DIRECTED_7

    @property
    def roundtrip_bound(self) -> Fraction:
        return Fraction(7)

    def step(self, view: LocalView) -> Step:
        return route7_step(view)


def _record(tree: DoubleTreeScheme, x: int, member: bool) -> DoubleRecord:
    return DoubleRecord(tree.out_part.records.get(x), tree.in_port(x), member)


def preprocess7(oracle: RoundtripOracle, build: HierarchyBuild, dummy: int | None = None) -> DirectedSevenScheme:
    """
    Builds the five table families and the labels of the 7-stretch roundtrip scheme on a three-level hierarchy.

    - ball trees T(B_0(w)) for every w give families (a) and (b)
    - spanning trees of the A_2 vertices give family (c)
    - for w ∈ B_1(u) the shortest path P(u, w) decides between a cluster-tree record (d) and a detour (e)
      through the spanning tree of p_2(z), z the first vertex of P(u, w) outside C(w)

    @raise NotStronglyConnected: some pair has no roundtrip
    """
    g = oracle.graph
    hierarchy = build.hierarchy
    if hierarchy.k != 3:
        raise ClientError(f"The 7-stretch scheme needs k = 3, got [{hierarchy.k}]")
    if not is_connected(g):
        raise NotStronglyConnected("The 7-stretch scheme needs a strongly connected graph")

    n = g.n
    tables: list[RoutingTable] = [{family: {} for family in DirectedSevenScheme.FAMILIES} for _ in range(n)]

    ball_trees: dict[int, DoubleTreeScheme] = {}
    for w in range(n):
        members = set(build.bunches.bunch(w, 0))
        tree = build_double_tree(oracle, w, members)
        ball_trees[w] = tree
        for x in tree.vertices:
            tables[x][BALL_RECORDS][w] = _record(tree, x, x in members)
        for x in members:
            tables[w][BALL_LABELS][x] = tree.out_part.labels[x]

    top_trees: dict[int, DoubleTreeScheme] = {}
    for y in hierarchy.levels[2]:
        tree = build_double_tree(oracle, y, range(n))
        top_trees[y] = tree
        for x in range(n):
            tables[x][TOP_RECORDS][y] = _record(tree, x, True)

    cluster_trees: dict[int, DoubleTreeScheme] = {}
    for u in range(n):
        for w in build.bunches.bunch(u, 1):
            path = tree_path(oracle.tree(w, Direction.reverse), u)
            outside = next((x for x in path if not build.clusters.contains(w, x)), None)
            if outside is None:
                if w not in cluster_trees:
                    cluster_trees[w] = build_double_tree(oracle, w, build.clusters.cluster(w))
                tables[u][CLEAN_RECORDS][w] = _record(cluster_trees[w], u, True)
            else:
                detour = hierarchy.pivots[outside][2]
                tables[u][DETOURS][w] = DetourEntry(detour, top_trees[detour].out_part.labels[w])

    labels = []
    for u in range(n):
        p1, p2 = hierarchy.pivots[u][1], hierarchy.pivots[u][2]
        pivot_port = None if p1 == u else oracle.tree(u, Direction.reverse).parent_port[p1]
        labels.append(SevenLabel(
            vertex=u,
            pivot1=p1,
            pivot2=p2,
            ball_label=ball_trees[u].out_part.labels[u],
            pivot_port=pivot_port,
            top_label=top_trees[p2].out_part.labels[u],
        ))

    for family in DirectedSevenScheme.FAMILIES:
        logger.debug(f"Family [{family}]: [{sum(len(t[family]) for t in tables)}] entries")
    logger.info(f"7-stretch scheme ready: n [{n}], level sizes [{hierarchy.level_sizes()}]")
    return DirectedSevenScheme(g, hierarchy, tables, labels, dummy)
