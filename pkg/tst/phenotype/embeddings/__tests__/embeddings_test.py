"""
Tests for phenotype embeddings component
"""

import numpy as np
import pytest

from src.phenotype.embeddings.embeddings import load_embeddings
from src.shared.errors.errors import CorpusFormatError, ParameterError


def _write(tmp_path, text):
    path = tmp_path / "vectors.tsv"
    path.write_text(text)
    return path


def test_load_embeddings_keeps_file_order(tmp_path):
    m = load_embeddings(_write(tmp_path, "glioma\t1.0\t2\n\nmeningioma\t-0.5\t3e-1\n"))
    assert m.items == ("glioma", "meningioma")
    np.testing.assert_array_equal(m.vectors, np.array([[1.0, 2.0], [-0.5, 0.3]]))


@pytest.mark.parametrize("text,message", [
    ("a\t1\t2\nb\t1\n", "line 2: dimension mismatch"),
    ("a\t1\tx\n", "line 1: column 3: non-numeric value"),
    ("a\t1\na\t2\n", "line 2: duplicate label"),
    ("a\tnan\n", "line 1: column 2: non-finite value"),
    ("lonely\n", "line 1: expected a label"),
])
def test_malformed_rows_name_the_line(tmp_path, text, message):
    with pytest.raises(CorpusFormatError, match=message):
        load_embeddings(_write(tmp_path, text))


def test_empty_file_is_rejected(tmp_path):
    with pytest.raises(ParameterError):
        load_embeddings(_write(tmp_path, "\n\n"))


def test_only_newlines_end_rows(tmp_path):
    path = tmp_path / "vectors.tsv"
    path.write_bytes("white matter\t1\r\nglioma\t2\r\n".encode("utf-8"))
    assert load_embeddings(path).items == ("white matter", "glioma")


def test_invalid_utf8_names_the_line(tmp_path):
    path = tmp_path / "vectors.tsv"
    path.write_bytes(b"a\t1\ncaf\xe9\t2\n")
    with pytest.raises(CorpusFormatError, match="^line 2: not valid UTF-8"):
        load_embeddings(path)
