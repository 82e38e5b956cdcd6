"""
Corpus component - Layer 1 (Foundation)
Loads line-delimited document corpora, tokenizes them and builds mergeable
unigram/bigram count tables with document frequencies
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path

import regex

from src.shared.errors.errors import CorpusFormatError
from src.shared.records.records import iter_records, read_text_lines

logger = logging.getLogger(__name__)

DEFAULT_STOPWORDS_PATH = Path(__file__).with_name("english.txt")
_EDGE_MARKS = regex.compile(r"^[\p{P}\p{S}]+|[\p{P}\p{S}]+$")


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    labels: frozenset = frozenset()


@dataclass(frozen=True)
class TokenizedDoc:
    id: str
    tokens: tuple


@dataclass(frozen=True)
class NgramTable:
    """Unigram/bigram counts and document frequencies; treat as read-only once built."""

    unigram_counts: dict = field(default_factory=dict)
    bigram_counts: dict = field(default_factory=dict)
    unigram_docfreq: dict = field(default_factory=dict)
    bigram_docfreq: dict = field(default_factory=dict)
    total_unigrams: int = 0
    num_docs: int = 0


def empty_table() -> NgramTable:
    """Returns the identity element for merge_tables."""
    return NgramTable()


def _normalise_labels(raw, line_number: int) -> frozenset:
    """Accepts a label string or list of strings; drops empty labels."""
    if raw is None:
        return frozenset()
    values = [raw] if isinstance(raw, str) else raw
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise CorpusFormatError(line_number, "labels must be a string or a list of strings")
    return frozenset(v for v in values if v)


def _record_to_document(line_number: int, record: dict, text_field: str,
                        label_field: str, id_field: str) -> Document:
    """Builds a Document from one parsed record."""
    raw_id = record.get(id_field)
    doc_id = f"line-{line_number}" if raw_id is None or raw_id == "" else str(raw_id)
    text = record.get(text_field)
    if text is None:
        raise CorpusFormatError(line_number, f"missing field {text_field!r} (record {doc_id})")
    if not isinstance(text, str):
        raise CorpusFormatError(line_number, f"field {text_field!r} is not a string (record {doc_id})")
    labels = _normalise_labels(record.get(label_field) if label_field else None, line_number)
    return Document(id=doc_id, text=text, labels=labels)


def load_corpus(path, text_field: str = "text", label_field: str = None,
                id_field: str = "id") -> list:
    """
    Loads a line-delimited record file into Documents, preserving file order.
    Raises CorpusFormatError naming the line for malformed or incomplete records.
    """
    documents = []
    seen = set()
    for line_number, record in iter_records(path):
        doc = _record_to_document(line_number, record, text_field, label_field, id_field)
        if doc.id in seen:
            raise CorpusFormatError(line_number, f"duplicate document id {doc.id!r}")
        seen.add(doc.id)
        documents.append(doc)
    logger.info("loaded %d documents from %s", len(documents), path)
    return documents


def load_stopwords(path=None) -> frozenset:
    """Loads a one-word-per-line stop-word file; None loads the bundled English list."""
    source = Path(path) if path else DEFAULT_STOPWORDS_PATH
    words = set()
    for _, line in read_text_lines(source):
        word = line.strip().lower()
        if word and not word.startswith("#"):
            words.add(word)
    return frozenset(words)


def _clean_token(raw: str) -> str:
    """Strips leading and trailing punctuation and symbols from a lowercased token."""
    return _EDGE_MARKS.sub("", raw)


def tokenize(doc: Document, stopwords: frozenset) -> TokenizedDoc:
    """Lowercases, splits on whitespace, strips edge punctuation and symbols and drops stop-words."""
    tokens = []
    for raw in doc.text.lower().split():
        token = _clean_token(raw)
        if token and token not in stopwords:
            tokens.append(token)
    return TokenizedDoc(id=doc.id, tokens=tuple(tokens))


def tokenize_corpus(documents: list, stopwords: frozenset) -> list:
    """Tokenizes every document in order."""
    return [tokenize(doc, stopwords) for doc in documents]


def count_ngrams(docs: list) -> NgramTable:
    """Counts unigrams and adjacent ordered bigrams within each document."""
    unigrams, bigrams = Counter(), Counter()
    unigram_df, bigram_df = Counter(), Counter()
    for doc in docs:
        pairs = list(zip(doc.tokens, doc.tokens[1:]))
        unigrams.update(doc.tokens)
        bigrams.update(pairs)
        unigram_df.update(set(doc.tokens))
        bigram_df.update(set(pairs))
    return NgramTable(
        unigram_counts=dict(unigrams),
        bigram_counts=dict(bigrams),
        unigram_docfreq=dict(unigram_df),
        bigram_docfreq=dict(bigram_df),
        total_unigrams=sum(unigrams.values()),
        num_docs=len(docs),
    )


def _sum_maps(a: dict, b: dict) -> dict:
    """Pointwise sum of two count maps."""
    merged = Counter(a)
    merged.update(b)
    return dict(merged)


def merge_tables(a: NgramTable, b: NgramTable) -> NgramTable:
    """Merges tables built from disjoint document sets by pointwise summation."""
    return NgramTable(
        unigram_counts=_sum_maps(a.unigram_counts, b.unigram_counts),
        bigram_counts=_sum_maps(a.bigram_counts, b.bigram_counts),
        unigram_docfreq=_sum_maps(a.unigram_docfreq, b.unigram_docfreq),
        bigram_docfreq=_sum_maps(a.bigram_docfreq, b.bigram_docfreq),
        total_unigrams=a.total_unigrams + b.total_unigrams,
        num_docs=a.num_docs + b.num_docs,
    )


def count_corpus(docs: list, shards: int = 1) -> NgramTable:
    """Counts the corpus in contiguous shards and folds the shard tables together."""
    shards = max(1, min(shards, len(docs) or 1))
    size = -(-len(docs) // shards) if docs else 0
    tables = [count_ngrams(docs[i:i + size]) for i in range(0, len(docs), size or 1)]
    table = reduce(merge_tables, tables, empty_table())
    logger.info("counted %d unigrams, %d distinct bigrams over %d documents",
                table.total_unigrams, len(table.bigram_counts), table.num_docs)
    return table
