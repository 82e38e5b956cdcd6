"""
Embeddings component - Layer 1 (Foundation)
Loads precomputed term/entity vectors from a label<TAB>float... file
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.shared.errors.errors import CorpusFormatError, ParameterError
from src.shared.records.records import read_text_lines

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EmbeddingMatrix:
    """items[i] labels row i of vectors (n x d, finite)."""

    items: tuple
    vectors: np.ndarray


def _parse_value(text: str, line_number: int, column: int) -> float:
    """Parses one finite float field."""
    try:
        value = float(text)
    except ValueError as e:
        raise CorpusFormatError(line_number, f"column {column}: non-numeric value {text!r}") from e
    if not math.isfinite(value):
        raise CorpusFormatError(line_number, f"column {column}: non-finite value {text!r}")
    return value


def _parse_row(line: str, line_number: int) -> tuple:
    """Splits a row into its label and vector values."""
    parts = line.rstrip("\n").split("\t")
    if len(parts) < 2 or not parts[0]:
        raise CorpusFormatError(line_number, "expected a label followed by at least one value")
    values = [_parse_value(text, line_number, column)
              for column, text in enumerate(parts[1:], start=2)]
    return parts[0], values


def _validate_rows(rows: list) -> None:
    """Checks dimension consistency and label uniqueness."""
    dimension = len(rows[0][2])
    seen = set()
    for line_number, label, values in rows:
        if len(values) != dimension:
            raise CorpusFormatError(line_number, "dimension mismatch")
        if label in seen:
            raise CorpusFormatError(line_number, f"duplicate label {label!r}")
        seen.add(label)


def load_embeddings(path) -> EmbeddingMatrix:
    """Reads the embedding file in file order."""
    rows = []
    for number, line in read_text_lines(path):
        if line.strip():
            rows.append((number, *_parse_row(line, number)))
    if not rows:
        raise ParameterError(f"{path}: no embedding rows")
    _validate_rows(rows)
    matrix = EmbeddingMatrix(items=tuple(label for _, label, _ in rows),
                             vectors=np.array([values for _, _, values in rows], dtype=float))
    logger.info("loaded %d embeddings of dimension %d", *matrix.vectors.shape)
    return matrix
