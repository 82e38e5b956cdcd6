"""
Significance component
Permutation test for bigram PMI under a within-document token shuffle
"""

import logging

import numpy as np

from src.mwe.pmi.pmi import MweRanking
from src.shared.errors.errors import ParameterError, UnknownKeyError

logger = logging.getLogger(__name__)


def _pair_count(tokens: np.ndarray, bigram: tuple) -> int:
    """Counts adjacent occurrences of bigram in a token array."""
    if tokens.size < 2:
        return 0
    x, y = bigram
    return int(np.count_nonzero((tokens[:-1] == x) & (tokens[1:] == y)))


def _candidate_arrays(docs: list, bigram: tuple) -> list:
    """Token arrays of the documents that could contain the bigram under any shuffle."""
    x, y = bigram
    arrays = []
    for doc in docs:
        if x in doc.tokens and y in doc.tokens:
            arrays.append(np.array(doc.tokens, dtype=object))
    return arrays


def _replicate_count(arrays: list, bigram: tuple, seed: int, replicate: int) -> int:
    """Shuffles every document with the replicate's own generator and recounts the bigram."""
    rng = np.random.default_rng([seed, replicate])
    return sum(_pair_count(rng.permutation(tokens), bigram) for tokens in arrays)


def permutation_test(docs: list, bigram: tuple, n_perm: int, seed: int = 0) -> float:
    """
    Returns the add-one permutation p-value of the bigram's PMI.
    Shuffling within documents keeps N and both unigram counts fixed, so a
    replicate's PMI reaches the observed PMI exactly when its bigram count does.
    """
    if n_perm < 1:
        raise ParameterError(f"n_perm must be >= 1, got {n_perm}")
    if seed < 0:
        raise ParameterError(f"seed must be >= 0, got {seed}")
    arrays = _candidate_arrays(docs, bigram)
    observed = sum(_pair_count(tokens, bigram) for tokens in arrays)
    if observed < 1:
        raise UnknownKeyError("bigram", bigram)
    extreme = sum(1 for r in range(n_perm)
                  if _replicate_count(arrays, bigram, seed, r) >= observed)
    return (1 + extreme) / (1 + n_perm)


def filter_significant(ranking: MweRanking, docs: list, n_perm: int, alpha: float,
                       seed: int = 0) -> MweRanking:
    """Keeps ranking entries whose permutation p-value is at most alpha."""
    if not 0.0 < alpha <= 1.0:
        raise ParameterError(f"alpha must lie in (0, 1], got {alpha}")
    kept = tuple(entry for entry in ranking.entries
                 if permutation_test(docs, entry.bigram, n_perm, seed) <= alpha)
    logger.info("significance filter kept %d of %d candidates (alpha=%s, n_perm=%d)",
                len(kept), len(ranking.entries), alpha, n_perm)
    config = dict(ranking.config, n_perm=n_perm, alpha=alpha, seed=seed)
    return MweRanking(entries=kept, config=config)
