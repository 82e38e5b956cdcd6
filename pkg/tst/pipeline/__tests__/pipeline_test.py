"""
Tests for pipeline component
"""

import json

import pytest

from src.mwe.association.association import associate
from src.pipeline.pipeline import ARTIFACTS, extract, load_tokenized, pipeline
from src.shared.config.run_config import build_run_config
from src.shared.errors.errors import StageError
from src.shared.synthetic.synthetic import PLANTED_PHRASES, corpus_to_bytes, generate_corpus


@pytest.fixture(scope="module")
def synthetic_corpus(tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "synthetic.jsonl"
    path.write_bytes(corpus_to_bytes(generate_corpus()))
    return path


def _config(corpus, out_dir, **overrides):
    values = {"corpus": str(corpus), "out_dir": str(out_dir), "label_field": "labels"} | overrides
    return build_run_config(flag_values=values, environ={})


def test_pipeline_writes_every_artifact(synthetic_corpus, tmp_path):
    written = pipeline(_config(synthetic_corpus, tmp_path / "run"))
    assert list(written) == list(ARTIFACTS)
    for stage, name in ARTIFACTS.items():
        assert (tmp_path / "run" / name).is_file()
        assert written[stage] == str(tmp_path / "run" / name)
    ontology = [json.loads(line) for line in (tmp_path / "run" / "ontology.jsonl").read_text().splitlines()]
    assert ontology and all(entry["head"] == entry["members"][0] for entry in ontology)


def test_pipeline_is_byte_deterministic(synthetic_corpus, tmp_path):
    pipeline(_config(synthetic_corpus, tmp_path / "first"))
    pipeline(_config(synthetic_corpus, tmp_path / "second"))
    for name in ARTIFACTS.values():
        assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()


def test_planted_phrases_rank_high_and_align_with_labels(synthetic_corpus, tmp_path):
    config = _config(synthetic_corpus, tmp_path)
    documents, tokenized = load_tokenized(config)
    _, ranking = extract(config, tokenized)
    top = [entry.bigram for entry in ranking.entries[:20]]
    assert set(PLANTED_PHRASES.values()) <= set(top)
    pairs = [(tok, doc.labels) for tok, doc in zip(tokenized, documents)]
    matrix = associate(pairs, list(PLANTED_PHRASES.values()), set(PLANTED_PHRASES))
    for label, phrase in PLANTED_PHRASES.items():
        assert matrix.cell(phrase, label) > 0.8


def test_significance_filter_keeps_planted_phrases(synthetic_corpus, tmp_path):
    config = _config(synthetic_corpus, tmp_path, n_perm=49)
    _, tokenized = load_tokenized(config)
    _, ranking = extract(config, tokenized)
    assert set(PLANTED_PHRASES.values()) <= {entry.bigram for entry in ranking.entries}


def test_degenerate_corpus_fails_at_communities(tmp_path):
    corpus = tmp_path / "flat.jsonl"
    corpus.write_text("\n".join(json.dumps({"id": str(i), "text": f"word{i}"}) for i in range(5)))
    with pytest.raises(StageError, match="^communities: degenerate graph") as error:
        pipeline(_config(corpus, tmp_path / "out", min_df=1))
    assert error.value.stage == "communities"
    assert (tmp_path / "out" / ARTIFACTS["graph"]).is_file()
    assert not (tmp_path / "out" / ARTIFACTS["communities"]).exists()


def test_missing_corpus_fails_at_extract(tmp_path):
    with pytest.raises(StageError, match="^extract: "):
        pipeline(_config(tmp_path / "absent.jsonl", tmp_path / "out"))
