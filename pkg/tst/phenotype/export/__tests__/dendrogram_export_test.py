"""
Tests for phenotype dendrogram export component
"""

import numpy as np
import pytest

from src.phenotype.embeddings.embeddings import EmbeddingMatrix
from src.phenotype.export.export import export_dendrogram, import_dendrogram_records
from src.phenotype.ward.ward import hac_ward
from src.shared.errors.errors import CorpusFormatError, ParameterError


def _tree(rows, items):
    return hac_ward(EmbeddingMatrix(items=items, vectors=np.array(rows, dtype=float)))


def test_two_leaf_newick():
    assert export_dendrogram(_tree([[0.0], [1.0]], ("a", "b")), "newick") == b"(a:1.0,b:1.0);\n"


def test_three_leaf_newick_nests_the_first_merge():
    text = export_dendrogram(_tree([[0.0], [1.0], [10.0]], ("a", "b", "c")), "newick").decode()
    assert text.startswith("(c:")
    assert ",(a:1.0,b:1.0):" in text and text.endswith(");\n")


def test_newick_quotes_special_labels():
    text = export_dendrogram(_tree([[0.0], [3.0]], ("small vessel", "o'brien")), "newick")
    assert text == b"('o''brien':3.0,'small vessel':3.0);\n"


def test_records_round_trip():
    dg = _tree(np.random.default_rng(0).normal(size=(6, 2)), tuple("abcdef"))
    data = export_dendrogram(dg, "records")
    assert data.splitlines()[0] == b'{"items": ["a", "b", "c", "d", "e", "f"], "type": "leaves"}'
    assert import_dendrogram_records(data) == dg


def test_records_with_inconsistent_sizes_are_rejected():
    data = (b'{"items": ["a", "b"], "type": "leaves"}\n'
            b'{"cluster": 2, "height": 1.0, "left": 0, "right": 1, "size": 3, "type": "merge"}\n')
    with pytest.raises(CorpusFormatError, match="line 2"):
        import_dendrogram_records(data)


def test_unknown_format():
    with pytest.raises(ParameterError):
        export_dendrogram(_tree([[0.0], [1.0]], ("a", "b")), "svg")
