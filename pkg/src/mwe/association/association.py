"""
Association component
Matthews Correlation Coefficient between expression presence and document cluster labels
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.shared.errors.errors import ParameterError
from src.shared.records.records import join_lines

logger = logging.getLogger(__name__)

ASSOCIATION_HEADER = "expression\tlabel\tmcc\tdefined"


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int


@dataclass(frozen=True)
class AssociationMatrix:
    """MCC per (expression, label); None marks an undefined cell."""

    rows: tuple
    columns: tuple
    cells: tuple

    def cell(self, expression: tuple, label: str):
        """Returns the MCC (or None) for one expression and label."""
        return self.cells[self.rows.index(expression)][self.columns.index(label)]


def mcc(c: ConfusionCounts):
    """
    Calculates (tp*tn - fp*fn) / sqrt((tp+fp)(tp+fn)(tn+fp)(tn+fn)).
    Returns None when any denominator factor is zero.
    """
    denominator = (c.tp + c.fp) * (c.tp + c.fn) * (c.tn + c.fp) * (c.tn + c.fn)
    if denominator == 0:
        return None
    value = (c.tp * c.tn - c.fp * c.fn) / math.sqrt(denominator)
    return min(1.0, max(-1.0, value))


def _ngrams(tokens: tuple, sizes: set) -> set:
    """All contiguous token tuples of the requested sizes."""
    found = set()
    for n in sizes:
        found.update(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))
    return found


def presence_matrix(docs: list, expressions: list) -> np.ndarray:
    """Boolean document x expression matrix of contiguous occurrence."""
    sizes = {len(expression) for expression in expressions}
    matrix = np.zeros((len(docs), len(expressions)), dtype=bool)
    for i, doc in enumerate(docs):
        found = _ngrams(doc.tokens, sizes)
        matrix[i] = [expression in found for expression in expressions]
    return matrix


def _label_matrix(label_sets: list, labels: list) -> np.ndarray:
    """Boolean document x label membership matrix."""
    matrix = np.zeros((len(label_sets), len(labels)), dtype=bool)
    for i, doc_labels in enumerate(label_sets):
        matrix[i] = [label in doc_labels for label in labels]
    return matrix


def _confusion_arrays(presence: np.ndarray, membership: np.ndarray) -> tuple:
    """Per-cell tp, fp, fn, tn arrays from the two boolean matrices."""
    tp = presence.T.astype(np.int64) @ membership.astype(np.int64)
    fp = presence.sum(axis=0)[:, None] - tp
    fn = membership.sum(axis=0)[None, :] - tp
    tn = presence.shape[0] - tp - fp - fn
    return tp, fp, fn, tn


def associate(corpus: list, expressions: list, cluster_labels) -> AssociationMatrix:
    """
    Scores every (expression, label) pair by MCC of expression presence against
    label membership. corpus is a list of (TokenizedDoc, label set) pairs.
    """
    if not expressions:
        raise ParameterError("expressions must not be empty")
    rows = tuple(tuple(expression) for expression in expressions)
    columns = tuple(sorted(cluster_labels))
    docs = [doc for doc, _ in corpus]
    membership = _label_matrix([set(labels) for _, labels in corpus], list(columns))
    tp, fp, fn, tn = _confusion_arrays(presence_matrix(docs, list(rows)), membership)
    cells = tuple(
        tuple(mcc(ConfusionCounts(int(tp[i, j]), int(tn[i, j]), int(fp[i, j]), int(fn[i, j])))
              for j in range(len(columns)))
        for i in range(len(rows)))
    for j, label in enumerate(columns):
        if not membership[:, j].any():
            logger.warning("label %r appears in no document; its column is undefined", label)
    return AssociationMatrix(rows=rows, columns=columns, cells=cells)


def top_associations(matrix: AssociationMatrix, top_n: int) -> list:
    """
    Returns (expression, label, mcc) triples, per label sorted by descending MCC
    with undefined cells ranked as 0, ties by expression.
    """
    if top_n < 1:
        raise ParameterError(f"top_n must be >= 1, got {top_n}")
    triples = []
    for j, label in enumerate(matrix.columns):
        column = [(row, matrix.cells[i][j]) for i, row in enumerate(matrix.rows)]
        column.sort(key=lambda item: (-(item[1] or 0.0), item[0]))
        triples.extend((row, label, value) for row, value in column[:top_n])
    return triples


def format_associations_tsv(triples: list) -> bytes:
    """Renders association triples as TSV; undefined values print as 0.0 with defined=0."""
    lines = [ASSOCIATION_HEADER]
    for expression, label, value in triples:
        rendered = 0.0 if value is None else value
        lines.append(f"{' '.join(expression)}\t{label}\t{rendered!r}\t{int(value is not None)}")
    return join_lines(lines)
