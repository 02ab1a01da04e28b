"""Graph codecs: ``n m`` edge-list text and graph6 strings."""

import logging
from pathlib import Path

import networkx as nx

from src.errors import GraphFormatError
from src.services.graph import MAX_VERTICES, Graph
from src.services.patterns import named_pattern

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"


def parse_edge_list(text: str, *, max_vertices: int = MAX_VERTICES) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (0-based). Blank lines and ``#`` comments are skipped."""
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        header = [int(tok) for tok in lines[0].split()]
    except ValueError:
        raise GraphFormatError(f"bad header line: {lines[0]!r}") from None
    if len(header) != 2:
        raise GraphFormatError(f"header must be 'n m', got {lines[0]!r}")
    n, m = header
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header announces {m} edges but {len(lines) - 1} follow")
    edges = []
    for line in lines[1:]:
        toks = line.split()
        if len(toks) != 2:
            raise GraphFormatError(f"edge line must be 'u v', got {line!r}")
        try:
            edges.append((int(toks[0]), int(toks[1])))
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {line!r}") from None
    return Graph.from_edges(n, edges, strict=True, max_vertices=max_vertices)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if not data:
        raise GraphFormatError("empty graph6 string")
    try:
        g = nx.from_graph6_bytes(data.encode("ascii"))
    except (ValueError, nx.NetworkXError, UnicodeEncodeError) as e:
        raise GraphFormatError(f"invalid graph6 string {data!r}: {e}") from None
    return Graph.from_networkx(g)


def format_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def parse_graph_text(text: str) -> Graph:
    """Edge-list text if the first meaningful line is two integers, graph6 otherwise."""
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) == 2 and all(tok.lstrip("-").isdigit() for tok in toks):
            return parse_edge_list(text)
        return parse_graph6(line)
    raise GraphFormatError("no graph found in input")


def read_graph(path: str | Path) -> Graph:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise GraphFormatError(f"cannot read {p}: {e.strerror}") from None
    g = parse_graph_text(text)
    logger.debug("read %s from %s", g, p)
    return g


def resolve_graph(text: str) -> Graph:
    """A named shorthand such as ``K4STAR`` or ``C5``, else edge-list or graph6 text."""
    named = named_pattern(text)
    if named is not None:
        return named
    return parse_graph_text(text)
