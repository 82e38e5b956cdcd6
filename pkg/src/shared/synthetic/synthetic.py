"""
Synthetic corpus generator
Seeded labelled documents with one planted phrase per label, for tests and demos
"""

import numpy as np

from src.shared.corpus.corpus import Document
from src.shared.records.records import records_to_bytes

PLANTED_PHRASES = {
    "dementia": ("periventricular", "leukoaraiosis"),
    "epilepsy": ("hippocampal", "sclerosis"),
    "stroke": ("lacunar", "infarction"),
    "tumour": ("enhancing", "glioma"),
}
FILLER_STOPWORDS = ("the", "of", "and", "with", "in", "is")


def filler_vocabulary(size: int) -> list:
    """Neutral filler terms that never collide with planted tokens."""
    return [f"finding{i:04d}" for i in range(size)]


def _filler_tokens(rng: np.random.Generator, vocabulary: list, length: int) -> list:
    """Uniform filler with roughly one stop-word in ten."""
    tokens = []
    for _ in range(length):
        if rng.random() < 0.1:
            tokens.append(FILLER_STOPWORDS[rng.integers(len(FILLER_STOPWORDS))])
        else:
            tokens.append(vocabulary[rng.integers(len(vocabulary))])
    return tokens


def _plant(rng: np.random.Generator, tokens: list, phrase: tuple, repeats: int) -> list:
    """Inserts the phrase repeats times at distinct gaps, never splitting an earlier insertion."""
    gaps = set(int(g) for g in rng.choice(len(tokens) + 1, size=repeats, replace=False))
    planted = []
    for position in range(len(tokens) + 1):
        if position in gaps:
            planted.extend(phrase)
        if position < len(tokens):
            planted.append(tokens[position])
    return planted


def generate_corpus(n_docs: int = 1000, doc_length: int = 100, seed: int = 0,
                    vocab_size: int = 500, repeats: int = 3) -> list:
    """
    Generates n_docs documents, each carrying one label and its planted phrase
    repeats times among doc_length - 2 * repeats filler tokens.
    """
    rng = np.random.default_rng(seed)
    vocabulary = filler_vocabulary(vocab_size)
    labels = sorted(PLANTED_PHRASES)
    documents = []
    for i in range(n_docs):
        label = labels[rng.integers(len(labels))]
        filler = _filler_tokens(rng, vocabulary, max(doc_length - 2 * repeats, 0))
        tokens = _plant(rng, filler, PLANTED_PHRASES[label], repeats)
        documents.append(Document(id=f"doc-{i:05d}", text=" ".join(tokens),
                                  labels=frozenset({label})))
    return documents


def corpus_to_bytes(documents: list) -> bytes:
    """Renders documents as line-delimited {id, text, labels} records."""
    return records_to_bytes([{"id": doc.id, "text": doc.text, "labels": sorted(doc.labels)}
                             for doc in documents])
