"""
Ontology component
Groups terms by their argmax community and labels each group with its most central term
"""

import logging
from dataclasses import dataclass

import networkx as nx

from src.community.centrality.centrality import CentralityMap
from src.community.membership.membership import CommunityAssignment
from src.shared.errors.errors import ParameterError
from src.shared.records.records import records_to_bytes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OntologyEntry:
    community: int
    head: str
    members: tuple


@dataclass(frozen=True)
class Ontology:
    entries: tuple = ()


def _group_by_community(hard: dict) -> dict:
    """Inverts node -> community into community -> nodes."""
    groups = {}
    for node, community in hard.items():
        groups.setdefault(community, []).append(node)
    return groups


def extract_ontology(g: nx.Graph, ca: CommunityAssignment, cm: CentralityMap) -> Ontology:
    """One entry per community; members by descending centrality, ties lexicographic; head first."""
    if set(g.nodes) - set(cm.scores) or set(g.nodes) - set(ca.memberships):
        raise ParameterError("communities and centrality must cover the same graph")
    hard = {node: c for node, c in ca.hard_assignment().items() if node in g}
    entries = []
    for community, nodes in sorted(_group_by_community(hard).items()):
        members = tuple(sorted(nodes, key=lambda node: (-cm.scores[node], node)))
        entries.append(OntologyEntry(community=community, head=members[0], members=members))
    logger.info("ontology: %d head terms", len(entries))
    return Ontology(entries=tuple(entries))


def format_ontology(ontology: Ontology) -> bytes:
    """Renders one {community, head, members} object per line."""
    return records_to_bytes([{"community": e.community, "head": e.head, "members": list(e.members)}
                             for e in ontology.entries])
