from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


@dataclass(frozen=True)
class Decision:
    """One entry of a route's decision log, e.g. a phase change or an estimate update."""
    kind: str
    values: dict[str, Any] = field(default_factory=dict)

    def __str__(self) -> str:
        details = " ".join(f"{key}={value}" for key, value in self.values.items())
        return f"{self.kind} {details}".strip()


@dataclass(frozen=True)
class Forward:
    port: int
    header: Any
    events: tuple[Decision, ...] = ()


@dataclass(frozen=True)
class Deliver:
    events: tuple[Decision, ...] = ()


Step = Forward | Deliver


class AccessSource(Enum):
    TABLE = "table"
    OWN_LABEL = "own-label"
    DEST_LABEL = "dest-label"
    LABEL = "label"
    """label of an arbitrary vertex, looked up by id"""


@dataclass(frozen=True)
class Access:
    source: AccessSource
    owner: int
    key: str


class AccessLog:
    """Every read a step function makes of vertex state, with the vertex the state belongs to."""

    def __init__(self):
        self._entries: list[Access] = []

    def record(self, source: AccessSource, owner: int, key: Any) -> None:
        self._entries.append(Access(source, owner, str(key)))

    @property
    def entries(self) -> list[Access]:
        return list(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def violations(self, start: int, vertex: int, destination: int) -> list[Access]:
        """
        Accesses from position `start` on that break the locality contract: a table other than `vertex`'s,
        or a label other than `vertex`'s own and the destination's.
        """
        allowed = {
            AccessSource.TABLE: {vertex},
            AccessSource.OWN_LABEL: {vertex},
            AccessSource.DEST_LABEL: {destination},
            AccessSource.LABEL: {vertex, destination},
        }
        return [access for access in self._entries[start:] if access.owner not in allowed[access.source]]


class AuditedTable(Mapping):
    def __init__(self, owner: int, family: str, entries: Mapping[int, Any], log: AccessLog):
        self._owner = owner
        self._family = family
        self._entries = entries
        self._log = log

    def __getitem__(self, key: int) -> Any:
        self._log.record(AccessSource.TABLE, self._owner, f"{self._family}:{key}")
        return self._entries[key]

    def __contains__(self, key: object) -> bool:
        self._log.record(AccessSource.TABLE, self._owner, f"{self._family}:{key}")
        return key in self._entries

    def __iter__(self) -> Iterator[int]:
        self._log.record(AccessSource.TABLE, self._owner, f"{self._family}:*")
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)


class AuditedLabel:
    def __init__(self, owner: int, label: Any, source: AccessSource, log: AccessLog):
        self._owner = owner
        self._label = label
        self._source = source
        self._log = log

    def __getattr__(self, name: str) -> Any:
        self._log.record(self._source, self._owner, name)
        return getattr(self._label, name)


class LocalView:
    """
    What a step function sees when forwarding a message at `vertex`.
    Any vertex's table or label can be looked up, and every read is logged with the vertex it belongs to;
    the harness rejects a step that read anything but this vertex's table and label, the destination's
    label and the header. `distance_hint` is only set for oracle-assisted variants.
    """

    def __init__(self, vertex: int, destination: int, tables: Callable[[int], Mapping[str, Mapping[int, Any]]],
                 labels: Callable[[int], Any], header: Any, log: AccessLog, distance_hint: int | None = None):
        self._vertex = vertex
        self._destination = destination
        self._tables = tables
        self._labels = labels
        self._header = header
        self._log = log
        self._distance_hint = distance_hint

    @property
    def vertex(self) -> int:
        return self._vertex

    def table(self, family: str, owner: int | None = None) -> AuditedTable:
        owner = self._vertex if owner is None else owner
        return AuditedTable(owner, family, self._tables(owner).get(family, {}), self._log)

    @property
    def own_label(self) -> Any:
        return AuditedLabel(self._vertex, self._labels(self._vertex), AccessSource.OWN_LABEL, self._log)

    @property
    def dest_label(self) -> Any:
        return AuditedLabel(self._destination, self._labels(self._destination), AccessSource.DEST_LABEL, self._log)

    def label_of(self, owner: int) -> Any:
        return AuditedLabel(owner, self._labels(owner), AccessSource.LABEL, self._log)

    @property
    def header(self) -> Any:
        return self._header

    @property
    def distance_hint(self) -> int | None:
        return self._distance_hint
