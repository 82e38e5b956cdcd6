"""
Term graph component
Builds the undirected PMI-weighted co-occurrence graph of terms and extracts sub-graphs
A TermGraph is a networkx.Graph: node attribute "category" (optional), edge attribute "weight"
"""

import logging
from collections import Counter

import networkx as nx

from src.mwe.pmi.pmi import pmi_from_counts
from src.shared.corpus.corpus import NgramTable
from src.shared.errors.errors import CorpusFormatError, ParameterError, UnknownKeyError
from src.shared.records.records import read_text_lines

logger = logging.getLogger(__name__)


def canonical_graph(categories: dict, edges: list) -> nx.Graph:
    """
    Builds a TermGraph with lexicographic node and edge insertion order.
    categories maps every node to its category (or None); edges are (u, v, weight).
    """
    g = nx.Graph()
    for node in sorted(categories):
        if categories[node] is None:
            g.add_node(node)
        else:
            g.add_node(node, category=categories[node])
    for u, v, weight in sorted((min(u, v), max(u, v), w) for u, v, w in edges):
        if u == v:
            raise ParameterError(f"self-loop on {u!r} is not allowed")
        g.add_edge(u, v, weight=weight)
    return g


def _undirected_counts(table: NgramTable) -> Counter:
    """Sums (x, y) and (y, x) counts into one count per unordered pair, skipping x == y."""
    combined = Counter()
    for (x, y), count in table.bigram_counts.items():
        if x != y:
            combined[(min(x, y), max(x, y))] += count
    return combined


def build_graph(table: NgramTable, min_pmi: float = 0.0, min_count: int = 2,
                categories: dict = None) -> nx.Graph:
    """
    Keeps every unordered pair whose combined count is at least min_count and whose
    PMI on the combined count is at least min_pmi; nodes are the surviving endpoints.
    """
    if min_count < 1:
        raise ParameterError(f"min_count must be >= 1, got {min_count}")
    edges = []
    for (x, y), count in _undirected_counts(table).items():
        if count < min_count:
            continue
        weight = pmi_from_counts(count, table.unigram_counts[x], table.unigram_counts[y],
                                 table.total_unigrams)
        if weight >= min_pmi:
            edges.append((x, y, weight))
    categories = categories or {}
    nodes = {term: categories.get(term) for edge in edges for term in edge[:2]}
    g = canonical_graph(nodes, edges)
    logger.info("term graph: %d nodes, %d edges (min_pmi=%s, min_count=%d)",
                g.number_of_nodes(), g.number_of_edges(), min_pmi, min_count)
    return g


def subgraph(g: nx.Graph, term: str, radius: int = 1) -> nx.Graph:
    """Induced sub-graph on all nodes within radius hops of term; radius None is unbounded."""
    if term not in g:
        raise UnknownKeyError("term", term)
    if radius is not None and radius < 1:
        raise ParameterError(f"radius must be >= 1, got {radius}")
    reached = nx.single_source_shortest_path_length(g, term, cutoff=radius)
    return g.subgraph(reached).copy()


def community_subgraph(g: nx.Graph, assignment, community: int, tau: float) -> nx.Graph:
    """Induced sub-graph on nodes whose membership probability in community is >= tau."""
    if not 0.0 < tau <= 1.0:
        raise ParameterError(f"tau must lie in (0, 1], got {tau}")
    nodes = [node for node, probabilities in assignment.memberships.items()
             if node in g and probabilities.get(community, 0.0) >= tau]
    return g.subgraph(nodes).copy()


def load_categories(path) -> dict:
    """Reads a term<TAB>category file; blank lines and # comments are skipped."""
    categories = {}
    for number, line in read_text_lines(path):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise CorpusFormatError(number, "expected term<TAB>category")
        categories[parts[0].strip().lower()] = parts[1].strip()
    return categories
