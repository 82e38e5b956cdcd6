"""
Soft membership component
Derives per-node community membership probabilities from a hard partition as the
fraction of the node's positive edge weight that falls in each community
"""

import logging
from dataclasses import dataclass

import networkx as nx

from src.community.louvain.louvain import Partition, clamped_weight
from src.shared.errors.errors import CorpusFormatError, ParameterError
from src.shared.records.records import dumps_record, join_lines, parse_records, read_records

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommunityAssignment:
    """memberships maps node -> {community id: probability}; zero entries are omitted."""

    memberships: dict
    threshold: float

    def communities_of(self, node: str) -> list:
        """Communities whose membership probability reaches the threshold, ascending."""
        return sorted(c for c, p in self.memberships[node].items() if p >= self.threshold)

    def hard_assignment(self) -> dict:
        """Argmax community per node, ties to the lower community id."""
        return {node: min(probabilities, key=lambda c: (-probabilities[c], c))
                for node, probabilities in self.memberships.items()}


def _node_memberships(g: nx.Graph, node: str, assignment: dict) -> dict:
    """Weight fraction per neighbouring community; isolated nodes keep their own community."""
    weights = {}
    for neighbour, data in g[node].items():
        w = clamped_weight(data)
        if w > 0 and neighbour != node:
            c = assignment[neighbour]
            weights[c] = weights.get(c, 0.0) + w
    degree = sum(weights.values())
    if degree == 0:
        return {assignment[node]: 1.0}
    return {c: weights[c] / degree for c in sorted(weights)}


def soft_memberships(g: nx.Graph, p: Partition, tau: float) -> CommunityAssignment:
    """Probability of node v in community c = share of v's positive weighted degree going to c."""
    if not 0.0 < tau <= 1.0:
        raise ParameterError(f"tau must lie in (0, 1], got {tau}")
    missing = set(g.nodes) - set(p.assignment)
    if missing:
        raise ParameterError(f"partition does not cover nodes: {sorted(missing)[:5]}")
    memberships = {node: _node_memberships(g, node, p.assignment) for node in sorted(g.nodes)}
    shared = sum(1 for probs in memberships.values()
                 if sum(1 for v in probs.values() if v >= tau) > 1)
    logger.info("soft memberships: %d nodes, %d in more than one community at tau=%s",
                len(memberships), shared, tau)
    return CommunityAssignment(memberships=memberships, threshold=tau)


def format_partition(p: Partition) -> bytes:
    """Renders the hard partition: a meta line, then one term/community line per node."""
    lines = [dumps_record({"type": "partition", "modularity": p.modularity,
                           "levels": list(p.levels)})]
    lines += [dumps_record({"type": "node", "term": node, "community": c})
              for node, c in sorted(p.assignment.items())]
    return join_lines(lines)


def format_communities(p: Partition, ca: CommunityAssignment) -> bytes:
    """Renders a meta line followed by one line per node with its memberships."""
    lines = [dumps_record({"type": "partition", "modularity": p.modularity,
                           "levels": list(p.levels), "tau": ca.threshold})]
    for node, probabilities in ca.memberships.items():
        lines.append(dumps_record({
            "type": "node", "term": node, "community": p.assignment[node],
            "memberships": {str(c): v for c, v in probabilities.items()},
            "member_of": ca.communities_of(node),
        }))
    return join_lines(lines)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _parse_meta(number: int, meta: dict) -> tuple:
    """Validates the partition line; returns (modularity, levels, tau)."""
    modularity, levels, tau = meta.get("modularity"), meta.get("levels", []), meta.get("tau")
    if not _is_number(modularity) or not _is_number(tau):
        raise CorpusFormatError(number, "partition line needs numeric modularity and tau")
    if not isinstance(levels, list) or not all(_is_number(v) for v in levels):
        raise CorpusFormatError(number, "partition levels must be a list of numbers")
    return float(modularity), tuple(levels), float(tau)


def _parse_node(number: int, record: dict) -> tuple:
    """Validates one node line; returns (term, community, memberships)."""
    term, community, raw = record.get("term"), record.get("community"), record.get("memberships")
    if not isinstance(term, str) or not term:
        raise CorpusFormatError(number, "node line needs a non-empty string term")
    if not isinstance(community, int) or isinstance(community, bool):
        raise CorpusFormatError(number, f"community of {term!r} is not an integer")
    if not isinstance(raw, dict):
        raise CorpusFormatError(number, f"memberships of {term!r} is not an object")
    memberships = {}
    for key, value in raw.items():
        if not key.lstrip("-").isdigit() or not _is_number(value):
            raise CorpusFormatError(number, f"memberships of {term!r} must map ids to numbers")
        memberships[int(key)] = float(value)
    return term, community, memberships


def _parse_communities(parsed: list) -> tuple:
    """Rebuilds (Partition, CommunityAssignment) from parsed community records."""
    if not parsed or parsed[0][1].get("type") != "partition":
        first = parsed[0][0] if parsed else 1
        raise CorpusFormatError(first, "communities file lacks its partition line")
    modularity, levels, tau = _parse_meta(*parsed[0])
    assignment, memberships = {}, {}
    for number, record in parsed[1:]:
        term, community, probabilities = _parse_node(number, record)
        if term in assignment:
            raise CorpusFormatError(number, f"duplicate term {term!r}")
        assignment[term] = community
        memberships[term] = probabilities
    partition = Partition(assignment=assignment, modularity=modularity, levels=levels)
    return partition, CommunityAssignment(memberships=memberships, threshold=tau)


def parse_communities(data: bytes) -> tuple:
    """Parses communities bytes into (Partition, CommunityAssignment)."""
    return _parse_communities(parse_records(data))


def load_communities(path) -> tuple:
    """Reads a communities file into (Partition, CommunityAssignment)."""
    return _parse_communities(read_records(path))
