"""
Tests for shared synthetic component
"""

from src.shared.corpus.corpus import load_corpus
from src.shared.synthetic.synthetic import (
    PLANTED_PHRASES,
    corpus_to_bytes,
    filler_vocabulary,
    generate_corpus,
)


def test_generate_corpus_is_seeded():
    first = generate_corpus(n_docs=20, doc_length=30, seed=4)
    assert first == generate_corpus(n_docs=20, doc_length=30, seed=4)
    assert first != generate_corpus(n_docs=20, doc_length=30, seed=5)


def test_every_document_carries_its_phrase():
    docs = generate_corpus(n_docs=40, doc_length=30, seed=1, repeats=2)
    for doc in docs:
        (label,) = doc.labels
        tokens = doc.text.split()
        phrase = PLANTED_PHRASES[label]
        assert len(tokens) == 30
        assert sum(1 for pair in zip(tokens, tokens[1:]) if pair == phrase) == 2


def test_filler_never_collides_with_planted_tokens():
    planted = {token for phrase in PLANTED_PHRASES.values() for token in phrase}
    assert planted.isdisjoint(filler_vocabulary(500))


def test_corpus_round_trips_through_loader(tmp_path):
    docs = generate_corpus(n_docs=5, doc_length=12, seed=0)
    path = tmp_path / "synthetic.jsonl"
    path.write_bytes(corpus_to_bytes(docs))
    assert load_corpus(path, label_field="labels") == docs
