"""
Pipeline component
Chains extraction, graph construction, communities, centrality and ontology,
writing each stage's artifact before the next stage starts
"""

import logging
from pathlib import Path

from src.community.centrality.centrality import eigenvector_centrality, format_centrality_tsv
from src.community.louvain.louvain import louvain
from src.community.membership.membership import (
    format_communities,
    format_partition,
    soft_memberships,
)
from src.community.ontology.ontology import extract_ontology, format_ontology
from src.mwe.pmi.pmi import format_ranking_tsv, rank_mwes
from src.mwe.significance.significance import filter_significant
from src.shared.config.run_config import RunConfig
from src.shared.corpus.corpus import count_corpus, load_corpus, load_stopwords, tokenize_corpus
from src.shared.errors.errors import LexigraphError, ParameterError, StageError
from src.shared.records.records import write_atomic
from src.termgraph.export.export import export_graph
from src.termgraph.graph.graph import build_graph, load_categories

logger = logging.getLogger(__name__)

ARTIFACTS = {
    "extract": "mwes.tsv",
    "graph": "graph.jsonl",
    "communities": "partition.jsonl",
    "memberships": "memberships.jsonl",
    "centrality": "centrality.tsv",
    "ontology": "ontology.jsonl",
}


def run_stage(name: str, action, *args):
    """Runs one stage, prefixing any domain or I/O failure with the stage name."""
    try:
        return action(*args)
    except (LexigraphError, OSError) as e:
        raise StageError(name, e) from e


def load_tokenized(config: RunConfig) -> tuple:
    """Loads and tokenizes the configured corpus; returns (documents, tokenized docs)."""
    if not config.corpus:
        raise ParameterError("a corpus path is required")
    documents = load_corpus(config.corpus, config.text_field, config.label_field,
                            config.id_field)
    return documents, tokenize_corpus(documents, load_stopwords(config.stopwords))


def extract(config: RunConfig, tokenized: list) -> tuple:
    """Counts n-grams and ranks MWEs, optionally keeping only significant ones."""
    table = count_corpus(tokenized)
    ranking = rank_mwes(table, config.min_df, config.max_df, config.top_n)
    if config.n_perm > 0:
        ranking = filter_significant(ranking, tokenized, config.n_perm, config.alpha, config.seed)
    return table, ranking


def _write(out_dir: Path, stage: str, data: bytes, written: dict) -> None:
    """Writes one stage artifact and records its path."""
    written[stage] = run_stage(stage, write_atomic, out_dir / ARTIFACTS[stage], data)


def pipeline(config: RunConfig) -> dict:
    """Runs every stage in order; returns stage name -> written artifact path."""
    out_dir = Path(config.out_dir)
    written = {}
    _, tokenized = run_stage("extract", load_tokenized, config)
    table, ranking = run_stage("extract", extract, config, tokenized)
    _write(out_dir, "extract", format_ranking_tsv(ranking), written)
    categories = run_stage("graph", load_categories, config.categories) if config.categories else {}
    g = run_stage("graph", build_graph, table, config.min_pmi, config.min_count, categories)
    _write(out_dir, "graph", export_graph(g, "records"), written)
    partition = run_stage("communities", louvain, g, config.seed)
    _write(out_dir, "communities", format_partition(partition), written)
    assignment = run_stage("memberships", soft_memberships, g, partition, config.tau)
    _write(out_dir, "memberships", format_communities(partition, assignment), written)
    centrality = run_stage("centrality", eigenvector_centrality, g, config.tol,
                           config.max_iter, config.damping)
    _write(out_dir, "centrality", format_centrality_tsv(g, centrality), written)
    ontology = run_stage("ontology", extract_ontology, g, assignment, centrality)
    _write(out_dir, "ontology", format_ontology(ontology), written)
    logger.info("pipeline wrote %d artifacts to %s", len(written), out_dir)
    return written
