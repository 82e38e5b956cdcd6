"""
Louvain component
Two-phase modularity maximisation (local moves, then community aggregation) on a TermGraph.
Negative edge weights are clamped to 0.
"""

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np

from src.shared.errors.errors import DegenerateGraphError

logger = logging.getLogger(__name__)

_GAIN_EPSILON = 1e-12


@dataclass(frozen=True)
class Partition:
    assignment: dict
    modularity: float
    levels: tuple = ()


@dataclass
class _Level:
    """Weighted graph of one aggregation level: neighbours, internal loop weight, strength."""

    adj: list
    loops: list
    strength: list


def clamped_weight(data: dict) -> float:
    """Edge weight used for modularity and centrality: max(weight, 0)."""
    return max(float(data.get("weight", 1.0)), 0.0)


def modularity(g: nx.Graph, assignment: dict) -> float:
    """Weighted modularity of an assignment with clamped weights; 0 for a weightless graph."""
    m = sum(clamped_weight(data) for _, _, data in g.edges(data=True))
    if m == 0:
        return 0.0
    internal, total = {}, {}
    for u, v, data in g.edges(data=True):
        w = clamped_weight(data)
        total[assignment[u]] = total.get(assignment[u], 0.0) + w
        total[assignment[v]] = total.get(assignment[v], 0.0) + w
        if assignment[u] == assignment[v]:
            internal[assignment[u]] = internal.get(assignment[u], 0.0) + w
    return sum(internal.get(c, 0.0) / m - (tot / (2 * m)) ** 2 for c, tot in total.items())


def _first_level(g: nx.Graph, nodes: list) -> _Level:
    """Index-based level graph of the original TermGraph."""
    index = {node: i for i, node in enumerate(nodes)}
    adj = [dict() for _ in nodes]
    for u, v, data in g.edges(data=True):
        w = clamped_weight(data)
        if w > 0 and u != v:
            adj[index[u]][index[v]] = w
            adj[index[v]][index[u]] = w
    return _Level(adj=adj, loops=[0.0] * len(nodes), strength=[sum(a.values()) for a in adj])


def _best_community(level: _Level, i: int, community: list, total: list, m: float) -> int:
    """Picks the community with the largest modularity gain for node i (already removed)."""
    links = {}
    for j, w in level.adj[i].items():
        links[community[j]] = links.get(community[j], 0.0) + w
    ki = level.strength[i]
    best = community[i]
    best_gain = links.get(best, 0.0) - total[best] * ki / (2 * m)
    for c in sorted(links):
        gain = links[c] - total[c] * ki / (2 * m)
        if gain > best_gain + _GAIN_EPSILON:
            best, best_gain = c, gain
    return best


def _move_nodes(level: _Level, m: float, rng: np.random.Generator) -> tuple:
    """Local-move phase; returns (community per node, whether any node moved)."""
    community = list(range(len(level.adj)))
    total = list(level.strength)
    any_move = True
    moved_on_level = False
    while any_move:
        any_move = False
        for i in rng.permutation(len(community)):
            old = community[i]
            total[old] -= level.strength[i]
            new = _best_community(level, i, community, total, m)
            total[new] += level.strength[i]
            community[i] = new
            any_move = any_move or new != old
        moved_on_level = moved_on_level or any_move
    return community, moved_on_level


def _relabel(community: list) -> list:
    """Renumbers communities contiguously by first appearance."""
    ids = {}
    return [ids.setdefault(c, len(ids)) for c in community]


def _aggregate(level: _Level, community: list) -> _Level:
    """Collapses each community into a single node with a self-loop for its internal weight."""
    size = max(community) + 1
    adj = [dict() for _ in range(size)]
    loops = [0.0] * size
    for i, neighbours in enumerate(level.adj):
        ci = community[i]
        loops[ci] += level.loops[i]
        for j, w in neighbours.items():
            cj = community[j]
            if ci == cj:
                loops[ci] += w / 2
            else:
                adj[ci][cj] = adj[ci].get(cj, 0.0) + w
    strength = [2 * loops[c] + sum(adj[c].values()) for c in range(size)]
    return _Level(adj=adj, loops=loops, strength=strength)


def _canonical_assignment(nodes: list, membership: list) -> dict:
    """Maps nodes to community ids numbered by first appearance in node order."""
    relabelled = _relabel(membership)
    return {node: relabelled[i] for i, node in enumerate(nodes)}


def _check_weight(g: nx.Graph, m: float):
    """Rejects graphs without positive weight, except the single-node graph."""
    if g.number_of_nodes() == 0 or (m == 0 and g.number_of_nodes() > 1):
        raise DegenerateGraphError()


def louvain(g: nx.Graph, seed: int = 0) -> Partition:
    """
    Runs Louvain with a seeded node visit order per pass.
    Returns the final assignment of original nodes with its modularity and the
    modularity reached after every aggregation level.
    Moves are greedy, so a sparse weighted graph can settle in a local optimum
    well below the best partition.
    """
    nodes = sorted(g.nodes)
    m = sum(clamped_weight(data) for _, _, data in g.edges(data=True))
    _check_weight(g, m)
    if m == 0:
        return Partition(assignment={nodes[0]: 0}, modularity=0.0, levels=(0.0,))
    rng = np.random.default_rng(seed)
    membership = list(range(len(nodes)))
    best_q = modularity(g, _canonical_assignment(nodes, membership))
    levels = [best_q]
    level = _first_level(g, nodes)
    while True:
        community, moved = _move_nodes(level, m, rng)
        community = _relabel(community)
        candidate = [community[c] for c in membership]
        q = modularity(g, _canonical_assignment(nodes, candidate))
        if not moved or q <= best_q:
            break
        membership, best_q = candidate, q
        levels.append(q)
        logger.debug("louvain level %d: %d communities, Q=%.6f", len(levels) - 1,
                     max(community) + 1, q)
        level = _aggregate(level, community)
    assignment = _canonical_assignment(nodes, membership)
    logger.info("louvain: %d communities, Q=%.6f after %d levels",
                len(set(assignment.values())), best_q, len(levels) - 1)
    return Partition(assignment=assignment, modularity=best_q, levels=tuple(levels))
