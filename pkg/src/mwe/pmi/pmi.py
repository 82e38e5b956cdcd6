"""
PMI component
Scores bigrams with pointwise mutual information and ranks multi-word-expression candidates
"""

import logging
import math
from dataclasses import dataclass, field

from src.shared.corpus.corpus import NgramTable
from src.shared.errors.errors import ParameterError, UnknownKeyError
from src.shared.records.records import join_lines

logger = logging.getLogger(__name__)

RANKING_HEADER = "bigram\tpmi\tppmi\tcount\tdocfreq"


@dataclass(frozen=True)
class PmiScore:
    bigram: tuple
    pmi: float
    ppmi: float
    count: int
    docfreq: int


@dataclass(frozen=True)
class MweRanking:
    entries: tuple = ()
    config: dict = field(default_factory=dict)


def pmi_from_counts(bigram_count: int, x_count: int, y_count: int, total: int) -> float:
    """
    Calculates log2(p(x,y) / (p(x) p(y))) with every probability estimated over
    the unigram total, so p(x,y) = X_bi / N.
    """
    p_xy = bigram_count / total
    p_x = x_count / total
    p_y = y_count / total
    return math.log2(p_xy / (p_x * p_y))


def pmi(table: NgramTable, bigram: tuple) -> float:
    """Returns the PMI in bits of a bigram present in the table."""
    count = table.bigram_counts.get(bigram, 0)
    if count < 1:
        raise UnknownKeyError("bigram", bigram)
    x, y = bigram
    return pmi_from_counts(count, table.unigram_counts[x], table.unigram_counts[y],
                           table.total_unigrams)


def ppmi(table: NgramTable, bigram: tuple) -> float:
    """Returns max(0, PMI) for a bigram present in the table."""
    return max(0.0, pmi(table, bigram))


def resolve_df_bound(bound, num_docs: int) -> float:
    """Turns an absolute (int) or fractional (float) df bound into a document count."""
    if isinstance(bound, bool) or not isinstance(bound, (int, float)):
        raise ParameterError(f"invalid document-frequency bound: {bound!r}")
    if isinstance(bound, int):
        return float(bound)
    if not 0.0 <= bound <= 1.0:
        raise ParameterError(f"fractional document-frequency bound must lie in [0, 1], got {bound}")
    return bound * num_docs


def score_bigram(table: NgramTable, bigram: tuple) -> PmiScore:
    """Builds the PmiScore record for one bigram."""
    value = pmi(table, bigram)
    return PmiScore(bigram=bigram, pmi=value, ppmi=max(0.0, value),
                    count=table.bigram_counts[bigram], docfreq=table.bigram_docfreq[bigram])


def ranking_key(score: PmiScore) -> tuple:
    """Total order: descending PMI, then descending count, then lexicographic bigram."""
    return (-score.pmi, -score.count, score.bigram)


def rank_mwes(table: NgramTable, min_df=1, max_df=1.0, top_n: int = 50) -> MweRanking:
    """Scores every bigram whose document frequency lies within bounds and keeps the top_n."""
    if top_n < 1:
        raise ParameterError(f"top_n must be >= 1, got {top_n}")
    low = resolve_df_bound(min_df, table.num_docs)
    high = resolve_df_bound(max_df, table.num_docs)
    if low < 0 or low > high:
        raise ParameterError(f"document-frequency bounds must satisfy 0 <= min_df <= max_df, "
                             f"got {min_df}, {max_df}")
    candidates = [score_bigram(table, bigram) for bigram, df in table.bigram_docfreq.items()
                  if low <= df <= high]
    entries = tuple(sorted(candidates, key=ranking_key)[:top_n])
    logger.info("ranked %d of %d bigrams, kept %d", len(candidates),
                len(table.bigram_counts), len(entries))
    return MweRanking(entries=entries,
                      config={"min_df": min_df, "max_df": max_df, "top_n": top_n})


def format_ranking_tsv(ranking: MweRanking) -> bytes:
    """Renders a ranking as TSV with a header row."""
    lines = [RANKING_HEADER]
    for entry in ranking.entries:
        lines.append(f"{' '.join(entry.bigram)}\t{entry.pmi!r}\t{entry.ppmi!r}\t"
                     f"{entry.count}\t{entry.docfreq}")
    return join_lines(lines)
