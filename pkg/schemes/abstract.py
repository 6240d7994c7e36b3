from abc import ABC, abstractmethod
from collections.abc import Mapping
from fractions import Fraction
from typing import Any, ClassVar

from common import SchemeTag
from graph.weighted_graph import WeightedGraph
from hierarchy.levels import Hierarchy
from simulation.view import LocalView, Step

RoutingTable = dict[str, dict[int, Any]]


class RoutingScheme(ABC):
    """
    Preprocessed state of one scheme instance: a routing table RT(u) and a label L(u) per vertex.
    Tables are split into named entry families, each keyed by a vertex id.
    Subclasses provide the per-hop step function, which sees a vertex's state only through a `LocalView`.
    """

    FAMILIES: ClassVar[dict[str, type]]
    """entry type of every table family, used for (de)serialization"""
    LABEL: ClassVar[type]

    def __init__(self, graph: WeightedGraph, hierarchy: Hierarchy, tables: list[RoutingTable],
                 labels: list[Any], dummy: int | None = None):
        self._graph = graph
        self._hierarchy = hierarchy
        self._tables = tables
        self._labels = labels
        self._dummy = dummy

    @property
    @abstractmethod
    def tag(self) -> SchemeTag:
        pass

    @abstractmethod
    def step(self, view: LocalView) -> Step:
        pass

    @property
    def roundtrip_bound(self) -> Fraction | None:
        """guaranteed roundtrip stretch, if the scheme claims one"""
        return None

    @property
    def oneway_bound(self) -> Fraction | None:
        """guaranteed one-way stretch, if the scheme claims one"""
        return None

    @property
    def needs_distance_hint(self) -> bool:
        return False

    @property
    def graph(self) -> WeightedGraph:
        return self._graph

    @property
    def hierarchy(self) -> Hierarchy:
        return self._hierarchy

    @property
    def k(self) -> int:
        return self._hierarchy.k

    @property
    def n(self) -> int:
        return self._graph.n

    @property
    def dummy(self) -> int | None:
        return self._dummy

    def table(self, u: int) -> Mapping[str, Mapping[int, Any]]:
        return self._tables[u]

    def label(self, u: int) -> Any:
        return self._labels[u]

    def family_entries(self, u: int) -> dict[str, int]:
        return {family: len(self._tables[u].get(family, {})) for family in self.FAMILIES}

    def entries(self, u: int) -> int:
        return sum(self.family_entries(u).values())

    def total_entries(self) -> int:
        return sum(self.entries(u) for u in range(self.n))

    def label_words(self, u: int) -> int:
        return self._labels[u].words

    def tables_to_json(self) -> list[dict[str, list[list[Any]]]]:
        return [
            {family: [[key, entry.to_json()] for key, entry in sorted(table.get(family, {}).items())]
             for family in self.FAMILIES}
            for table in self._tables
        ]

    def labels_to_json(self) -> list[Any]:
        return [label.to_json() for label in self._labels]

    @classmethod
    def tables_from_json(cls, data: list[dict[str, list[list[Any]]]]) -> list[RoutingTable]:
        return [
            {family: {key: entry_type.from_json(entry) for key, entry in table.get(family, [])}
             for family, entry_type in cls.FAMILIES.items()}
            for table in data
        ]

    @classmethod
    def labels_from_json(cls, data: list[Any]) -> list[Any]:
        return [cls.LABEL.from_json(label) for label in data]
