"""
Ward clustering component
Hierarchical agglomerative clustering with Ward linkage and flat cuts of the resulting dendrogram.
Cluster references: leaves are input row indices 0..n-1, merge t creates cluster n+t.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from src.phenotype.embeddings.embeddings import EmbeddingMatrix
from src.shared.errors.errors import ParameterError
from src.shared.records.records import join_lines

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float
    size: int


@dataclass(frozen=True)
class Dendrogram:
    items: tuple
    merges: tuple


@dataclass
class _WardState:
    """
    Squared Ward distances between slots; each active slot holds one cluster.
    nearest[s] is the partner slot minimising (distance, id pair) for slot s.
    """

    distances: np.ndarray
    ids: list
    sizes: list
    active: np.ndarray
    nearest: np.ndarray
    nearest_distance: np.ndarray


def _id_pair(state: _WardState, a: int, b: int) -> tuple:
    first, second = state.ids[a], state.ids[b]
    return (first, second) if first < second else (second, first)


def _refresh_nearest(state: _WardState, slot: int) -> None:
    """Recomputes the cached nearest partner of one slot from its distance row."""
    row = np.where(state.active, state.distances[slot], np.inf)
    row[slot] = np.inf
    best = row.min()
    candidates = np.flatnonzero(row == best)
    state.nearest[slot] = min(candidates, key=lambda other: _id_pair(state, slot, other))
    state.nearest_distance[slot] = best


def _initial_state(vectors: np.ndarray) -> _WardState:
    """Squared Euclidean distances between singleton clusters."""
    n = vectors.shape[0]
    state = _WardState(distances=squareform(pdist(vectors, "sqeuclidean")), ids=list(range(n)),
                       sizes=[1] * n, active=np.ones(n, dtype=bool),
                       nearest=np.zeros(n, dtype=np.intp), nearest_distance=np.full(n, np.inf))
    for slot in range(n):
        _refresh_nearest(state, slot)
    return state


def _closest_pair(state: _WardState) -> tuple:
    """Slots of the closest active pair; exact ties go to the smallest (id, id) pair."""
    distance = np.where(state.active, state.nearest_distance, np.inf)
    candidates = np.flatnonzero(distance == distance.min())
    pairs = [(int(slot), int(state.nearest[slot])) for slot in candidates]
    a, b = min(pairs, key=lambda pair: _id_pair(state, *pair))
    return (a, b) if state.ids[a] < state.ids[b] else (b, a)


def _lance_williams(state: _WardState, a: int, b: int) -> np.ndarray:
    """Squared Ward distance from every slot to the union of slots a and b."""
    sizes = np.array(state.sizes, dtype=float)
    na, nb = sizes[a], sizes[b]
    total = na + nb + sizes
    return ((na + sizes) * state.distances[a] + (nb + sizes) * state.distances[b]
            - sizes * state.distances[a, b]) / total


def _update_nearest(state: _WardState, a: int, b: int) -> None:
    """Repairs the nearest-partner cache after slot a absorbed slot b."""
    stale = state.active & ((state.nearest == a) | (state.nearest == b))
    stale[a] = True
    others = state.active & ~stale
    row = state.distances[a]
    closer = others & (row < state.nearest_distance)
    state.nearest[closer] = a
    state.nearest_distance[closer] = row[closer]
    for slot in np.flatnonzero(others & ~closer & (row == state.nearest_distance)):
        if _id_pair(state, slot, a) < _id_pair(state, slot, state.nearest[slot]):
            state.nearest[slot] = a
    for slot in np.flatnonzero(stale):
        _refresh_nearest(state, int(slot))


def _merge(state: _WardState, a: int, b: int, new_id: int) -> None:
    """Replaces slot a with the merged cluster and retires slot b."""
    row = _lance_williams(state, a, b)
    state.distances[a, :] = row
    state.distances[:, a] = row
    state.distances[a, a] = 0.0
    state.sizes[a] += state.sizes[b]
    state.ids[a] = new_id
    state.active[b] = False
    _update_nearest(state, a, b)


def _canonical_order(items: tuple) -> list:
    """Input row indices sorted by label; ties are resolved in this order."""
    return sorted(range(len(items)), key=lambda i: items[i])


def hac_ward(m: EmbeddingMatrix) -> Dendrogram:
    """
    Agglomerates the rows under the Ward criterion using Lance-Williams updates.
    Merge height is the Ward distance (square root of the squared update value).
    """
    n = len(m.items)
    if n < 2:
        raise ParameterError(f"Ward clustering needs at least 2 items, got {n}")
    order = _canonical_order(m.items)
    state = _initial_state(np.asarray(m.vectors, dtype=float)[order])

    def ref(cluster_id: int) -> int:
        return order[cluster_id] if cluster_id < n else cluster_id

    merges = []
    for step in range(n - 1):
        a, b = _closest_pair(state)
        height = float(np.sqrt(max(state.distances[a, b], 0.0)))
        size = state.sizes[a] + state.sizes[b]
        merges.append(Merge(left=ref(state.ids[a]), right=ref(state.ids[b]),
                            height=height, size=size))
        _merge(state, a, b, n + step)
    logger.info("ward clustering: %d items, root height %.6g", n, merges[-1].height)
    return Dendrogram(items=tuple(m.items), merges=tuple(merges))


def cluster_members(dg: Dendrogram, cluster: int) -> list:
    """Input row indices under a cluster reference, in ascending order."""
    n = len(dg.items)
    stack, leaves = [cluster], []
    while stack:
        current = stack.pop()
        if current < n:
            leaves.append(current)
        else:
            merge = dg.merges[current - n]
            stack.extend((merge.left, merge.right))
    return sorted(leaves)


def cut_dendrogram(dg: Dendrogram, k: int) -> dict:
    """
    Flat clustering into k clusters by undoing the k-1 highest merges.
    Cluster ids follow the first appearance of an item in input order.
    """
    n = len(dg.items)
    if not 1 <= k <= n:
        raise ParameterError(f"k must lie in [1, {n}], got {k}")
    root_of = list(range(n))
    for t in range(n - k):
        for leaf in cluster_members(dg, n + t):
            root_of[leaf] = n + t
    ids = {}
    return {dg.items[i]: ids.setdefault(root_of[i], len(ids)) for i in range(n)}


def format_assignments_tsv(assignment: dict) -> bytes:
    """Renders item<TAB>cluster rows in input order with a header."""
    lines = ["item\tcluster"] + [f"{item}\t{cluster}" for item, cluster in assignment.items()]
    return join_lines(lines)
