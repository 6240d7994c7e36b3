from dataclasses import dataclass
from typing import Iterable

from common import Direction
from errors import MemberUnreachable
from graph.oracle import RoundtripOracle


@dataclass(frozen=True)
class SubTree:
    """
    Part of a deterministic shortest-path tree of `root` serving a member set.
    `parent` maps each non-root vertex to its neighbor toward the root
    (predecessor for out-trees, successor for in-trees).
    """
    root: int
    direction: Direction
    parent: dict[int, int]
    members: frozenset[int]

    @property
    def vertices(self) -> list[int]:
        return sorted(set(self.parent) | {self.root})

    def __len__(self) -> int:
        return len(self.parent) + 1


def extract_tree(oracle: RoundtripOracle, root: int, member_set: Iterable[int],
                 direction: Direction = Direction.forward) -> SubTree:
    """
    Union of the tree paths root->s (forward, T_out) or s->root (reverse, T_in) for s in `member_set`.
    @raise MemberUnreachable: a member has no path to or from the root
    """
    result = oracle.tree(root, direction)
    members = frozenset(member_set)
    parent: dict[int, int] = {}
    for s in sorted(members):
        if not result.reachable(s):
            raise MemberUnreachable(f"Member [{s}] unreachable {'from' if direction is Direction.forward else 'to'} "
                                    f"root [{root}]")
        x = s
        while x != root and x not in parent:
            parent[x] = result.parent[x]
            x = result.parent[x]
    return SubTree(root=root, direction=direction, parent=parent, members=members)


def extract_double_tree(oracle: RoundtripOracle, root: int, member_set: Iterable[int]) -> tuple[SubTree, SubTree]:
    """T(root, X) = (T_out, T_in); identical shapes in undirected graphs"""
    members = list(member_set)
    return (
        extract_tree(oracle, root, members, Direction.forward),
        extract_tree(oracle, root, members, Direction.reverse),
    )
