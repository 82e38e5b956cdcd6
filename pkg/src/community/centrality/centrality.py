"""
Centrality component
Eigenvector centrality by power iteration per connected component, and the
unweighted local clustering coefficient
"""

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np

from src.community.louvain.louvain import clamped_weight
from src.shared.errors.errors import ConvergenceError, CorpusFormatError, ParameterError, UnknownKeyError
from src.shared.records.records import join_lines, read_text_lines

logger = logging.getLogger(__name__)

CENTRALITY_HEADER = "term\tcentrality\tclustering"


@dataclass(frozen=True)
class CentralityMap:
    """Non-negative scores, L2-normalised within each connected component."""

    scores: dict


def _positive_graph(g: nx.Graph) -> nx.Graph:
    """Copy of g keeping only edges of positive clamped weight, with every node."""
    positive = nx.Graph()
    positive.add_nodes_from(sorted(g.nodes))
    positive.add_weighted_edges_from(
        (u, v, clamped_weight(data)) for u, v, data in g.edges(data=True)
        if clamped_weight(data) > 0 and u != v)
    return positive


def power_iteration(adjacency: np.ndarray, tol: float, max_iter: int,
                    shift: float = 0.0) -> np.ndarray:
    """
    Iterates v <- (A + shift I) v / ||(A + shift I) v|| from the uniform vector.
    Stops once the eigen-residual of the unshifted matrix, ||A v - lambda v||_inf
    with lambda = v.A v, drops below tol * lambda.
    """
    n = adjacency.shape[0]
    vector = np.full(n, 1.0 / np.sqrt(n))
    for iteration in range(1, max_iter + 1):
        product = adjacency @ vector
        eigenvalue = float(vector @ product)
        if eigenvalue > 0 and np.max(np.abs(product - eigenvalue * vector)) < tol * eigenvalue:
            logger.debug("power iteration converged after %d iterations", iteration)
            return vector
        nxt = product + shift * vector
        norm = np.linalg.norm(nxt)
        if norm == 0:
            return vector
        vector = nxt / norm
    raise ConvergenceError(max_iter, f"eigenvector centrality did not converge after "
                                     f"{max_iter} iterations; oscillation suggests a bipartite "
                                     f"component, retry with damping > 0")


def _component_scores(g: nx.Graph, component: list, tol: float, max_iter: int,
                      damping: float) -> dict:
    """Principal eigenvector of one component's adjacency plus damping * I."""
    nodes = sorted(component)
    if len(nodes) == 1:
        return {nodes[0]: 1.0}
    adjacency = nx.to_numpy_array(g, nodelist=nodes, weight="weight")
    vector = np.abs(power_iteration(adjacency, tol, max_iter, shift=damping))
    return {node: float(value) for node, value in zip(nodes, vector)}


def eigenvector_centrality(g: nx.Graph, tol: float = 1e-10, max_iter: int = 10000,
                           damping: float = 1.0) -> CentralityMap:
    """
    Eigenvector centrality computed separately for each connected component of the
    positive-weight graph. damping adds weight-1 self-loops (scaled) so that
    bipartite components converge; damping=0 iterates the bare adjacency.
    """
    if tol <= 0 or max_iter < 1 or damping < 0:
        raise ParameterError("eigenvector centrality needs tol > 0, max_iter >= 1, damping >= 0")
    positive = _positive_graph(g)
    scores = {}
    for component in nx.connected_components(positive):
        scores.update(_component_scores(positive, component, tol, max_iter, damping))
    logger.info("eigenvector centrality over %d nodes", len(scores))
    return CentralityMap(scores=dict(sorted(scores.items())))


def clustering_coefficient(g: nx.Graph, node: str) -> float:
    """Fraction of the node's neighbour pairs that are adjacent; 0 below degree 2."""
    if node not in g:
        raise UnknownKeyError("node", node)
    return float(nx.clustering(g, node))


def format_centrality_tsv(g: nx.Graph, cm: CentralityMap) -> bytes:
    """Renders term, centrality and clustering coefficient per node."""
    clustering = nx.clustering(g)
    lines = [CENTRALITY_HEADER]
    for node, score in cm.scores.items():
        lines.append(f"{node}\t{score!r}\t{float(clustering[node])!r}")
    return join_lines(lines)


def load_centrality(path) -> CentralityMap:
    """Reads the centrality column of a centrality TSV file."""
    numbered = [(number, line) for number, line in read_text_lines(path) if line.strip()]
    if not numbered or numbered[0][1].split("\t")[:2] != ["term", "centrality"]:
        raise CorpusFormatError(1, "expected a term<TAB>centrality header")
    scores = {}
    for number, line in numbered[1:]:
        parts = line.split("\t")
        try:
            scores[parts[0]] = float(parts[1])
        except (IndexError, ValueError) as e:
            raise CorpusFormatError(number, "malformed centrality row") from e
    return CentralityMap(scores=scores)


def graph_metrics(g: nx.Graph, cm: CentralityMap) -> list:
    """Per-node rows of degree, weighted degree, clustering coefficient and centrality."""
    clustering = nx.clustering(g)
    rows = [{"term": node, "degree": g.degree(node),
             "weighted_degree": float(g.degree(node, weight="weight")),
             "clustering": float(clustering[node]), "centrality": cm.scores.get(node, 0.0)}
            for node in sorted(g.nodes)]
    if rows:
        logger.info("average clustering coefficient %.4f",
                    sum(row["clustering"] for row in rows) / len(rows))
    return rows
