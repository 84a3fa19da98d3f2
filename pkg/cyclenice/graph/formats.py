"""
Graph file formats: edge list, graph6 and DOT export.

Edge-list files start with a ``n m`` line followed by ``m`` lines ``u v``
(0-based, repeated lines are parallel edges). Writing then reading an edge
list gives back the same edge order.
"""
import logging
from pathlib import Path
from typing import Optional, Union

import networkx as nx

from cyclenice.errors import GraphFormatError
from cyclenice.graph.multigraph import Multigraph

logger = logging.getLogger(__name__)

EDGES = "edges"
GRAPH6 = "g6"
FORMATS = (EDGES, GRAPH6)

PathLike = Union[str, Path]


def parse_edge_list(text: str) -> Multigraph:
    """
    Parse edge-list text.

    Raises:
        GraphFormatError: If the header or an edge line is malformed or the counts disagree
        LoopError: If an edge joins a vertex to itself
    """
    lines = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        n, m = (int(x) for x in lines[0])
        pairs = [(int(u), int(v)) for u, v in lines[1:]]
    except ValueError as e:
        raise GraphFormatError(f"malformed edge list: {e}") from e
    if n < 0 or m < 0:
        raise GraphFormatError(f"negative counts in header: {n} {m}")
    if len(pairs) != m:
        raise GraphFormatError(f"header announces {m} edges but {len(pairs)} follow")
    if any(not (0 <= u < n and 0 <= v < n) for u, v in pairs):
        raise GraphFormatError(f"edge endpoint outside 0..{n - 1}")
    return Multigraph(n, pairs)


def format_edge_list(g: Multigraph) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(f"{e.u} {e.v}" for e in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Multigraph:
    """Parse one graph6 string (header optional); graph6 only holds simple graphs."""
    data = [line for line in text.split() if line]
    if len(data) != 1:
        raise GraphFormatError(f"expected exactly one graph6 record, found {len(data)}")
    try:
        graph = nx.from_graph6_bytes(data[0].encode("ascii"))
    except (ValueError, nx.NetworkXError, UnicodeEncodeError) as e:
        raise GraphFormatError(f"malformed graph6 data: {e}") from e
    return Multigraph.from_networkx(graph)


def format_graph6(g: Multigraph) -> str:
    if not g.is_simple:
        raise GraphFormatError("graph6 cannot hold parallel edges; use the edge-list format")
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii")


def to_dot(g: Multigraph, name: str = "G") -> str:
    """DOT text for display; marker edges are drawn dashed."""
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in g.vertices)
    for e in g.edges:
        style = ", style=dashed" if e.marker else ""
        lines.append(f"  {e.u} -- {e.v} [label={e.id}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def detect_format(path: PathLike, fmt: Optional[str] = None) -> str:
    if fmt is not None:
        if fmt not in FORMATS:
            raise GraphFormatError(f"unknown graph format {fmt!r}")
        return fmt
    return GRAPH6 if Path(path).suffix == ".g6" else EDGES


def read_graph(path: PathLike, fmt: Optional[str] = None) -> Multigraph:
    """
    Read a graph file.

    Args:
        path: File to read
        fmt: "edges" or "g6"; chosen from the file extension when omitted

    Returns:
        Parsed multigraph

    Raises:
        GraphFormatError: If the file cannot be read or parsed
    """
    fmt = detect_format(path, fmt)
    try:
        text = Path(path).read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as e:
        raise GraphFormatError(f"cannot read {path}: {e}") from e
    g = parse_graph6(text) if fmt == GRAPH6 else parse_edge_list(text)
    logger.info(f"Loaded {path}: {g.vertex_count} vertices, {g.edge_count} edges")
    return g


def write_graph(g: Multigraph, path: PathLike, fmt: Optional[str] = None) -> None:
    fmt = detect_format(path, fmt)
    text = format_graph6(g) if fmt == GRAPH6 else format_edge_list(g)
    try:
        Path(path).write_text(text, encoding="ascii")
    except OSError as e:
        raise GraphFormatError(f"cannot write {path}: {e}") from e
