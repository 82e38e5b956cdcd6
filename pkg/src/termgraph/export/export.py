"""
Term graph export component
Serialises a TermGraph as DOT, GraphML or line-delimited records, byte-deterministically
"""

import math

import networkx as nx

from src.shared.errors.errors import CorpusFormatError, ParameterError
from src.shared.records.records import join_lines, parse_records, read_records, records_to_bytes
from src.termgraph.graph.graph import canonical_graph

GRAPH_FORMATS = ("dot", "graphml", "records")


def _sorted_copy(g: nx.Graph) -> nx.Graph:
    """Rebuilds g with lexicographic node and edge order."""
    categories = {node: data.get("category") for node, data in g.nodes(data=True)}
    edges = [(u, v, data["weight"]) for u, v, data in g.edges(data=True)]
    return canonical_graph(categories, edges)


def _dot_quote(text: str) -> str:
    """Quotes a DOT identifier."""
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dot(g: nx.Graph) -> bytes:
    """Renders an undirected DOT graph with category and weight attributes."""
    lines = ["graph terms {"]
    for node, data in g.nodes(data=True):
        attributes = f" [category={_dot_quote(data['category'])}]" if "category" in data else ""
        lines.append(f"  {_dot_quote(node)}{attributes};")
    for u, v, data in g.edges(data=True):
        lines.append(f"  {_dot_quote(u)} -- {_dot_quote(v)} [weight={data['weight']!r}];")
    lines.append("}")
    return join_lines(lines)


def _to_graphml(g: nx.Graph) -> bytes:
    """Renders GraphML through the networkx writer."""
    return join_lines(list(nx.generate_graphml(g, prettyprint=True)))


def _to_records(g: nx.Graph) -> bytes:
    """Renders node records followed by edge records, one JSON object per line."""
    records = [{"type": "node", "term": node, "category": data.get("category")}
               for node, data in g.nodes(data=True)]
    records += [{"type": "edge", "source": u, "target": v, "weight": data["weight"]}
                for u, v, data in g.edges(data=True)]
    return records_to_bytes(records)


def export_graph(g: nx.Graph, format: str) -> bytes:
    """Serialises a TermGraph in one of dot, graphml or records."""
    writers = {"dot": _to_dot, "graphml": _to_graphml, "records": _to_records}
    if format not in writers:
        raise ParameterError(f"unknown graph format {format!r}; expected one of {GRAPH_FORMATS}")
    return writers[format](_sorted_copy(g))


def _read_edge(number: int, record: dict) -> tuple:
    """Validates one edge record."""
    try:
        edge = (record["source"], record["target"], float(record["weight"]))
    except (KeyError, TypeError, ValueError) as e:
        raise CorpusFormatError(number, f"malformed edge record ({e})") from e
    if not math.isfinite(edge[2]):
        raise CorpusFormatError(number, "edge weight is not finite")
    return edge


def _graph_from_records(parsed: list) -> nx.Graph:
    """Builds a TermGraph from parsed (line, record) pairs."""
    categories, edges = {}, []
    for number, record in parsed:
        kind = record.get("type")
        if kind == "node" and isinstance(record.get("term"), str):
            categories[record["term"]] = record.get("category")
        elif kind == "edge":
            edges.append((number, _read_edge(number, record)))
        else:
            raise CorpusFormatError(number, f"unknown record type {kind!r}")
    for number, (u, v, _) in edges:
        if u not in categories or v not in categories:
            raise CorpusFormatError(number, f"edge {u!r}-{v!r} references an undeclared node")
    return canonical_graph(categories, [edge for _, edge in edges])


def import_graph_records(data: bytes) -> nx.Graph:
    """Parses the records format back into a TermGraph."""
    return _graph_from_records(parse_records(data))


def load_graph(path) -> nx.Graph:
    """Reads a records-format graph file."""
    return _graph_from_records(read_records(path))
