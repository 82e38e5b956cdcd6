"""
Tests for community ontology component
"""

import json

import networkx as nx
import pytest

from src.community.centrality.centrality import CentralityMap, eigenvector_centrality
from src.community.louvain.louvain import Partition
from src.community.membership.membership import CommunityAssignment, soft_memberships
from src.community.ontology.ontology import (
    Ontology,
    extract_ontology,
    format_ontology,
)
from src.shared.errors.errors import ParameterError


def _star_pair():
    """Two stars, hubs ha and hb, with no edges between them."""
    g = nx.Graph()
    g.add_weighted_edges_from([("ha", f"a{i}", 1.0) for i in range(3)])
    g.add_weighted_edges_from([("hb", f"b{i}", 1.0) for i in range(4)])
    assignment = {node: 0 if node.endswith("a") or node.startswith("a") else 1 for node in g.nodes}
    return g, Partition(assignment=assignment, modularity=0.0)


def test_star_head_is_its_centre():
    g, _ = _star_pair()
    star = g.subgraph(["ha", "a0", "a1", "a2"]).copy()
    ca = soft_memberships(star, Partition({n: 0 for n in star}, 0.0), tau=0.5)
    ontology = extract_ontology(star, ca, eigenvector_centrality(star))
    assert len(ontology.entries) == 1
    assert ontology.entries[0].head == "ha"
    assert ontology.entries[0].members == ("ha", "a0", "a1", "a2")


def test_disjoint_communities_give_self_contained_entries():
    g, p = _star_pair()
    ontology = extract_ontology(g, soft_memberships(g, p, tau=0.5), eigenvector_centrality(g))
    assert [e.community for e in ontology.entries] == [0, 1]
    assert [e.head for e in ontology.entries] == ["ha", "hb"]
    assert set(ontology.entries[1].members) == {"hb", "b0", "b1", "b2", "b3"}


def test_equal_centrality_picks_smallest_term():
    g = nx.Graph()
    g.add_weighted_edges_from([("gamma", "alpha", 1.0), ("alpha", "beta", 1.0), ("beta", "gamma", 1.0)])
    ca = CommunityAssignment(memberships={n: {0: 1.0} for n in sorted(g)}, threshold=0.5)
    cm = CentralityMap(scores={n: 0.5 for n in g})
    entry = extract_ontology(g, ca, cm).entries[0]
    assert entry.head == "alpha"
    assert entry.members == ("alpha", "beta", "gamma")


def test_empty_graph_gives_empty_ontology():
    empty = extract_ontology(nx.Graph(), CommunityAssignment({}, 0.5), CentralityMap({}))
    assert empty == Ontology()


def test_mismatched_inputs_are_rejected():
    g, p = _star_pair()
    with pytest.raises(ParameterError):
        extract_ontology(g, soft_memberships(g, p, tau=0.5), CentralityMap({"ha": 1.0}))


def test_records_list_head_and_members():
    g, p = _star_pair()
    ontology = extract_ontology(g, soft_memberships(g, p, tau=0.5), eigenvector_centrality(g))
    data = format_ontology(ontology)
    assert data.splitlines()[0].startswith(b'{"community": 0, "head": "ha"')
    second = json.loads(data.splitlines()[1])
    assert second == {"community": 1, "head": "hb", "members": list(ontology.entries[1].members)}
