import json
from pathlib import Path
from typing import Any, Callable, TypeVar

from common import SchemeTag
from errors import ClientError
from graph.graph_io import read_graph, write_graph
from hierarchy.levels import Hierarchy
from schemes.abstract import RoutingScheme
from schemes.average import AverageOracleScheme, AverageScheme
from schemes.directed_hop import DirectedHopScheme
from schemes.directed_seven import DirectedSevenScheme
from schemes.undirected_rt import UndirectedRtScheme

STATE_FORMAT: str = "rtroute-state/1"

_T = TypeVar("_T")


def _deserialize(content: str, deserializer: Callable[[str], _T]) -> _T:
    try:
        return deserializer(content)
    except Exception as e:
        raise ClientError(f"Error while deserializing: {repr(e)}")


def _serialize(data: _T, serializer: Callable[[_T], str]) -> str:
    try:
        return serializer(data)
    except Exception as e:
        raise ClientError(f"Error while serializing: {repr(e)}")


def dump_json(data: Any) -> str:
    return _serialize(data, lambda d: json.dumps(d, indent=4, sort_keys=True))


def load_json(content: str) -> Any:
    return _deserialize(content, json.loads)


def scheme_to_json(scheme: RoutingScheme) -> dict[str, Any]:
    data = {
        "format": STATE_FORMAT,
        "scheme": scheme.tag.value,
        "graph": write_graph(scheme.graph),
        "dummy": scheme.dummy,
        "hierarchy": scheme.hierarchy.to_json(),
        "tables": scheme.tables_to_json(),
        "labels": scheme.labels_to_json(),
        "sizes": [scheme.entries(u) for u in range(scheme.n)],
    }
    if isinstance(scheme, DirectedHopScheme):
        data["hop_diameter"] = scheme.hop_diameter
    return data


def scheme_from_json(data: dict[str, Any]) -> RoutingScheme:
    """@raise ClientError: unknown format or scheme, or a malformed state"""
    if data.get("format") != STATE_FORMAT:
        raise ClientError(f"Unsupported state format [{data.get('format')}]")
    try:
        tag = SchemeTag(data["scheme"])
        graph = read_graph(data["graph"])
        hierarchy = Hierarchy.from_json(data["hierarchy"])
        dummy = data["dummy"]
        scheme_type: type[RoutingScheme]
        match tag:
            case SchemeTag.UNDIRECTED_RT:
                scheme_type = UndirectedRtScheme
            case SchemeTag.DIRECTED_7:
                scheme_type = DirectedSevenScheme
            case SchemeTag.AVERAGE:
                scheme_type = AverageScheme
            case SchemeTag.AVERAGE_ORACLE:
                scheme_type = AverageOracleScheme
            case SchemeTag.DIRECTED_HOP:
                return DirectedHopScheme(
                    graph, hierarchy,
                    DirectedHopScheme.tables_from_json(data["tables"]),
                    DirectedHopScheme.labels_from_json(data["labels"]),
                    data["hop_diameter"], dummy,
                )
        return scheme_type(
            graph, hierarchy,
            scheme_type.tables_from_json(data["tables"]),
            scheme_type.labels_from_json(data["labels"]),
            dummy,
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ClientError(f"Malformed routing state: {repr(e)}")


def save_scheme(scheme: RoutingScheme, path: str | Path) -> None:
    try:
        Path(path).write_text(dump_json(scheme_to_json(scheme)))
    except OSError as e:
        raise ClientError(f"Cannot write state [{path}]: {repr(e)}")


def load_scheme(path: str | Path) -> RoutingScheme:
    try:
        content = Path(path).read_text()
    except OSError as e:
        raise ClientError(f"Cannot read state [{path}]: {repr(e)}")
    return scheme_from_json(load_json(content))
