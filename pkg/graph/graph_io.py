from pathlib import Path

from common import MAX_WEIGHT
from errors import ClientError, DuplicateEdge, NonPositiveWeight, ParseError
from graph.weighted_graph import WeightedGraph


def read_graph(text: str) -> WeightedGraph:
    """
    Parses the edge-list format:

    ```
    # comment
    n m directed|undirected
    u v w
    ...
    ```

    @raise ParseError: malformed line, with its 1-based line number
    @raise NonPositiveWeight: weight below 1
    @raise DuplicateEdge: the same edge twice (either orientation for undirected graphs)
    """
    header: tuple[int, int, bool] | None = None
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            header = _parse_header(line_no, fields)
            continue

        n, m, directed = header
        if len(fields) != 3:
            raise ParseError(line_no, f"Expected 'u v w', got [{line}]")
        try:
            u, v, w = (int(f) for f in fields)
        except ValueError:
            raise ParseError(line_no, f"Non-integer field in [{line}]")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(line_no, f"Vertex outside [0, {n}) in [{line}]")
        if u == v:
            raise ParseError(line_no, f"Self-loop at vertex [{u}]")
        if w < 1:
            raise NonPositiveWeight(line_no, f"Weight [{w}] is not positive")
        if w > MAX_WEIGHT:
            raise ParseError(line_no, f"Weight [{w}] exceeds [{MAX_WEIGHT}]")
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(line_no, f"Edge [{u} {v}] listed twice")
        seen.add(key)
        edges.append((u, v, w))

    if header is None:
        raise ParseError(1, "Missing header 'n m directed|undirected'")
    n, m, directed = header
    if len(edges) != m:
        raise ParseError(line_no, f"Header announces [{m}] edges, found [{len(edges)}]")
    return WeightedGraph(n, directed, edges)


def _parse_header(line_no: int, fields: list[str]) -> tuple[int, int, bool]:
    if len(fields) != 3 or fields[2] not in ("directed", "undirected"):
        raise ParseError(line_no, f"Expected 'n m directed|undirected', got [{' '.join(fields)}]")
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise ParseError(line_no, "Vertex and edge counts must be integers")
    if n < 1 or m < 0:
        raise ParseError(line_no, f"Invalid counts n [{n}], m [{m}]")
    return n, m, fields[2] == "directed"


def write_graph(g: WeightedGraph) -> str:
    """canonical form: edges sorted by (u, v), undirected edges once with u < v"""
    edges = g.edges()
    lines = [f"{g.n} {len(edges)} {'directed' if g.directed else 'undirected'}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in edges)
    return "\n".join(lines) + "\n"


def load_graph(path: str | Path) -> WeightedGraph:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ClientError(f"Cannot read graph file [{path}]: {repr(e)}")
    return read_graph(text)


def save_graph(g: WeightedGraph, path: str | Path) -> None:
    try:
        Path(path).write_text(write_graph(g))
    except OSError as e:
        raise ClientError(f"Cannot write graph file [{path}]: {repr(e)}")
