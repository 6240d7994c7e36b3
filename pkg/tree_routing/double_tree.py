from dataclasses import dataclass
from typing import Iterable

from graph.oracle import RoundtripOracle
from hierarchy.trees import extract_double_tree
from tree_routing.tree_scheme import TreeScheme, build_tree_scheme, next_port


@dataclass(frozen=True)
class DoubleTreeScheme:
    """
    Routing in T(root, X) = T_out ∪ T_in.
    The out-part routes from the root down by destination label, the in-part routes any vertex up to the
    root by a locally stored successor port.
    """
    root: int
    out_part: TreeScheme
    in_ports: dict[int, int]
    """successor port toward the root for every non-root vertex of T_in"""

    @property
    def vertices(self) -> set[int]:
        return set(self.out_part.records) | set(self.in_ports) | {self.root}

    def in_port(self, v: int) -> int | None:
        return self.in_ports.get(v)


def build_double_tree(oracle: RoundtripOracle, root: int, member_set: Iterable[int]) -> DoubleTreeScheme:
    """@raise MemberUnreachable: some member cannot reach the root or be reached from it"""
    g = oracle.graph
    out_tree, in_tree = extract_double_tree(oracle, root, member_set)
    reverse = oracle.tree(root, in_tree.direction)
    in_ports = {v: reverse.parent_port[v] for v in in_tree.parent}
    return DoubleTreeScheme(root=root, out_part=build_tree_scheme(g, out_tree), in_ports=in_ports)


def route_through_root(oracle: RoundtripOracle, scheme: DoubleTreeScheme, source: int, destination: int) -> list[int]:
    """vertices visited from `source` up to the root by in-ports, then down to `destination` by its label"""
    g = oracle.graph
    path = [source]
    while path[-1] != scheme.root:
        path.append(g.arc_at(path[-1], scheme.in_ports[path[-1]]).target)
    label = scheme.out_part.labels[destination]
    while (port := next_port(scheme.out_part.records[path[-1]], label)) is not None:
        path.append(g.arc_at(path[-1], port).target)
    return path
