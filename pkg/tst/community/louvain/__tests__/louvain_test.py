"""
Tests for community louvain component
"""

import functools
import itertools
import random

import networkx as nx
import numpy as np
import pytest

from src.community.louvain.louvain import louvain, modularity
from src.shared.errors.errors import DegenerateGraphError


@functools.lru_cache(maxsize=None)
def _set_partitions(n):
    """Every set partition of range(n) as a row of restricted-growth labels."""
    labels = np.zeros((1, 1), dtype=np.int8)
    largest = np.zeros(1, dtype=np.int8)
    for width in range(1, n):
        blocks, tops = [], []
        for label in range(width + 1):
            rows = largest >= label - 1
            column = np.full((int(rows.sum()), 1), label, dtype=np.int8)
            blocks.append(np.hstack([labels[rows], column]))
            tops.append(np.maximum(largest[rows], label).astype(np.int8))
        labels, largest = np.concatenate(blocks), np.concatenate(tops)
    return labels


def _optimum(g):
    """Largest modularity over all set partitions of the nodes."""
    nodes = sorted(g.nodes)
    adjacency = nx.to_numpy_array(g, nodelist=nodes, weight="weight")
    degrees = adjacency.sum(axis=1)
    two_m = degrees.sum()
    gains = adjacency - np.outer(degrees, degrees) / two_m
    labels = _set_partitions(len(nodes))
    totals = np.full(len(labels), np.trace(gains))
    for i, j in itertools.combinations(range(len(nodes)), 2):
        totals += 2 * gains[i, j] * (labels[:, i] == labels[:, j])
    return float(totals.max() / two_m)


def _unit(edges):
    g = nx.Graph()
    g.add_weighted_edges_from((u, v, 1.0) for u, v in edges)
    return g


def _barbell(size):
    g = nx.relabel_nodes(nx.barbell_graph(size, 0), lambda n: f"t{n:02d}")
    nx.set_edge_attributes(g, 1.0, "weight")
    return g


def _random_graph(rng, n):
    g = nx.Graph()
    g.add_nodes_from(f"n{i}" for i in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.45:
                g.add_edge(f"n{i}", f"n{j}", weight=rng.uniform(0.1, 3.0))
    return g


def test_single_node_is_one_community():
    g = nx.Graph()
    g.add_node("glioma")
    p = louvain(g, seed=0)
    assert p.assignment == {"glioma": 0}
    assert p.modularity == 0.0


def test_two_triangles_split_at_the_bridge():
    g = _unit([("a", "b"), ("b", "c"), ("a", "c"), ("d", "e"), ("e", "f"), ("d", "f"), ("c", "d")])
    p = louvain(g, seed=0)
    assert p.assignment == {"a": 0, "b": 0, "c": 0, "d": 1, "e": 1, "f": 1}
    assert abs(p.modularity - _optimum(g)) < 1e-9
    assert p.modularity == pytest.approx(5 / 14, abs=1e-12)


def test_complete_graph_reaches_optimum():
    g = _unit([(u, v) for u in "abcd" for v in "abcd" if u < v])
    p = louvain(g, seed=3)
    assert abs(p.modularity - _optimum(g)) < 1e-9
    assert set(p.assignment.values()) == {0}


@pytest.mark.parametrize("size", [3, 4, 5, 6])
def test_planted_barbell_is_recovered(size):
    g = _barbell(size)
    p = louvain(g, seed=size)
    left = {p.assignment[f"t{i:02d}"] for i in range(size)}
    right = {p.assignment[f"t{i:02d}"] for i in range(size, 2 * size)}
    assert len(left) == 1 and len(right) == 1 and left != right
    assert abs(p.modularity - _optimum(g)) < 1e-9


def test_random_small_graphs_are_near_optimal():
    rng = random.Random(11)
    checked = 0
    while checked < 50:
        g = _random_graph(rng, rng.randint(3, 10))
        if g.number_of_edges() == 0:
            continue
        p = louvain(g, seed=checked)
        assert p.modularity >= _optimum(g) - 0.05
        assert all(b > a for a, b in zip(p.levels, p.levels[1:]))
        assert sorted(set(p.assignment.values())) == list(range(len(set(p.assignment.values()))))
        checked += 1


def test_modularity_matches_networkx():
    rng = random.Random(2)
    g = _random_graph(rng, 9)
    assignment = {node: rng.randint(0, 2) for node in g.nodes}
    groups = [{n for n, c in assignment.items() if c == k} for k in set(assignment.values())]
    expected = nx.community.modularity(g, groups, weight="weight")
    assert modularity(g, assignment) == pytest.approx(expected, abs=1e-12)


def test_negative_weights_are_clamped():
    g = _unit([("a", "b"), ("c", "d")])
    g.add_edge("b", "c", weight=-4.0)
    p = louvain(g, seed=0)
    assert p.assignment["a"] == p.assignment["b"] != p.assignment["c"] == p.assignment["d"]
    assert p.modularity == pytest.approx(0.5, abs=1e-12)


def test_fixed_seed_is_deterministic():
    g = _barbell(5)
    g.add_edge("t00", "t07", weight=0.5)
    assert louvain(g, seed=7) == louvain(g, seed=7)


@pytest.mark.parametrize("edges", [[], [("a", "b", -1.0)], [("a", "b", 0.0)]])
def test_weightless_graphs_are_degenerate(edges):
    g = nx.Graph()
    g.add_nodes_from(["a", "b"] if edges else [])
    g.add_weighted_edges_from(edges)
    with pytest.raises(DegenerateGraphError, match="degenerate graph"):
        louvain(g)
