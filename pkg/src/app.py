"""Lexigraph - command-line entry point for corpus terminology mining."""

import logging
import sys
from pathlib import Path

import click

from src.community.centrality.centrality import (
    eigenvector_centrality,
    format_centrality_tsv,
    graph_metrics,
    load_centrality,
)
from src.community.louvain.louvain import louvain
from src.community.membership.membership import (
    format_communities,
    load_communities,
    soft_memberships,
)
from src.community.ontology.ontology import extract_ontology, format_ontology
from src.mwe.association.association import associate, format_associations_tsv, top_associations
from src.mwe.pmi.pmi import format_ranking_tsv
from src.phenotype.embeddings.embeddings import load_embeddings
from src.phenotype.export.export import export_dendrogram
from src.phenotype.ward.ward import cut_dendrogram, format_assignments_tsv, hac_ward
from src.pipeline.pipeline import extract, load_tokenized, pipeline
from src.shared.config.run_config import build_run_config, load_config_file
from src.shared.corpus.corpus import count_corpus
from src.shared.errors.errors import LexigraphError, ParameterError
from src.shared.records.records import records_to_bytes, write_atomic
from src.shared.synthetic.synthetic import corpus_to_bytes, generate_corpus
from src.termgraph.export.export import export_graph, load_graph
from src.termgraph.graph.graph import build_graph, community_subgraph, load_categories, subgraph

logger = logging.getLogger("lexigraph")

_SUFFIX_FORMATS = {".dot": "dot", ".gv": "dot", ".graphml": "graphml", ".nwk": "newick",
                   ".newick": "newick", ".jsonl": "records", ".json": "records"}


class LexigraphGroup(click.Group):
    """Turns domain and file-system errors into a single-line diagnostic and exit status 1."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (LexigraphError, OSError) as e:
            logger.debug("command failed", exc_info=True)
            raise click.ClickException(str(e)) from e


def _run_config(ctx: click.Context, **flags):
    """Layers the --config file and the given flags into a RunConfig."""
    return build_run_config(ctx.obj["file_values"], flags)


def _emit(data: bytes, out) -> None:
    """Writes to the requested path atomically, or to stdout when no path is given."""
    if out:
        write_atomic(out, data)
    else:
        stdout = click.get_binary_stream("stdout")
        stdout.write(data)
        stdout.flush()


def _format_for(out, explicit: str, default: str) -> str:
    """Chooses an output format: explicit flag, then file suffix, then default."""
    if explicit:
        return explicit
    return _SUFFIX_FORMATS.get(Path(out).suffix.lower(), default) if out else default


def corpus_options(command):
    """Options shared by every command that reads a corpus."""
    options = [
        click.option("--corpus", type=click.Path(exists=True, dir_okay=False), default=None,
                     help="Line-delimited corpus records"),
        click.option("--text-field", default=None, help="Record field holding the text"),
        click.option("--label-field", default=None, help="Record field holding the labels"),
        click.option("--id-field", default=None, help="Record field holding the document id"),
        click.option("--stopwords", type=click.Path(exists=True, dir_okay=False), default=None,
                     help="Stop-word file, one word per line (default: bundled English list)"),
        click.option("--min-df", default=None, help="Minimum document frequency (int or fraction)"),
        click.option("--max-df", default=None, help="Maximum document frequency (int or fraction)"),
        click.option("--top-n", type=int, default=None, help="Number of MWEs to keep"),
        click.option("--n-perm", type=int, default=None,
                     help="Permutations for the significance filter (0 disables)"),
        click.option("--alpha", type=float, default=None, help="Significance level"),
        click.option("--seed", type=int, default=None, help="Random seed"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def graph_options(command):
    """Options controlling term graph construction."""
    command = click.option("--categories", type=click.Path(exists=True, dir_okay=False),
                           default=None, help="term<TAB>category annotation file")(command)
    command = click.option("--min-count", type=int, default=None,
                           help="Minimum combined co-occurrence count")(command)
    return click.option("--min-pmi", type=float, default=None, help="Minimum edge PMI")(command)


@click.group(cls=LexigraphGroup)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="JSON file of run parameters; flags override it")
@click.option("--log-level", default="WARNING", show_default=True,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
@click.pass_context
def cli(ctx: click.Context, config_path: str, log_level: str) -> None:
    """Corpus terminology mining: MWEs, term graphs, communities and phenotype trees."""
    logging.basicConfig(level=log_level.upper(), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s", force=True)
    ctx.obj = {"file_values": load_config_file(config_path) if config_path else {}}


@cli.group()
def mwe() -> None:
    """Multi-word expression extraction and cluster association."""


@mwe.command("extract")
@corpus_options
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output TSV path")
@click.pass_context
def mwe_extract(ctx: click.Context, out: str, **flags) -> None:
    """Rank bigrams by PMI within document-frequency bounds."""
    config = _run_config(ctx, **flags)
    _, tokenized = load_tokenized(config)
    _, ranking = extract(config, tokenized)
    _emit(format_ranking_tsv(ranking), out)


@mwe.command("assoc")
@corpus_options
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output TSV path")
@click.pass_context
def mwe_assoc(ctx: click.Context, out: str, **flags) -> None:
    """Score ranked MWEs against document labels by MCC."""
    config = _run_config(ctx, **flags)
    if not config.label_field:
        raise ParameterError("mwe assoc needs --label-field")
    documents, tokenized = load_tokenized(config)
    _, ranking = extract(config, tokenized)
    expressions = [entry.bigram for entry in ranking.entries]
    if not expressions:
        raise ParameterError("no MWE candidates to associate")
    labels = set().union(*(doc.labels for doc in documents))
    pairs = [(tok, doc.labels) for tok, doc in zip(tokenized, documents)]
    matrix = associate(pairs, expressions, labels)
    _emit(format_associations_tsv(top_associations(matrix, config.top_n)), out)


@cli.group()
def graph() -> None:
    """Term co-occurrence graphs, communities, centrality and ontology."""


@graph.command("build")
@corpus_options
@graph_options
@click.option("--format", "fmt", type=click.Choice(["records", "dot", "graphml"]), default=None)
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="Output graph path")
@click.pass_context
def graph_build(ctx: click.Context, fmt: str, out: str, **flags) -> None:
    """Build the PMI-weighted co-occurrence graph."""
    config = _run_config(ctx, **flags)
    _, tokenized = load_tokenized(config)
    categories = load_categories(config.categories) if config.categories else {}
    g = build_graph(count_corpus(tokenized), config.min_pmi, config.min_count, categories)
    _emit(export_graph(g, _format_for(out, fmt, "records")), out)


@graph.command("subgraph")
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--term", default=None, help="Anchor term")
@click.option("--radius", type=int, default=None, help="Hops from the anchor term")
@click.option("--community", type=int, default=None, help="Community id instead of a term")
@click.option("--communities", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--tau", type=float, default=None, help="Membership threshold for --community")
@click.option("--format", "fmt", type=click.Choice(["records", "dot", "graphml"]), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def graph_subgraph(ctx, graph_path, term, radius, community, communities, tau, fmt, out) -> None:
    """Extract a term-anchored or community sub-graph."""
    config = _run_config(ctx, radius=radius, tau=tau)
    g = load_graph(graph_path)
    if community is not None:
        if not communities:
            raise ParameterError("--community needs --communities")
        sub = community_subgraph(g, load_communities(communities)[1], community, config.tau)
    elif term:
        sub = subgraph(g, term.lower(), config.radius)
    else:
        raise ParameterError("give --term or --community")
    _emit(export_graph(sub, _format_for(out, fmt, "dot")), out)


@graph.command("communities")
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--seed", type=int, default=None)
@click.option("--tau", type=float, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def graph_communities(ctx, graph_path, seed, tau, out) -> None:
    """Louvain communities with soft memberships."""
    config = _run_config(ctx, seed=seed, tau=tau)
    g = load_graph(graph_path)
    partition = louvain(g, config.seed)
    _emit(format_communities(partition, soft_memberships(g, partition, config.tau)), out)


@graph.command("centrality")
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--tol", type=float, default=None)
@click.option("--max-iter", type=int, default=None)
@click.option("--damping", type=float, default=None, help="Self-loop weight; 0 disables")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--metrics", type=click.Path(dir_okay=False), default=None,
              help="Also write per-term degree, weighted degree, clustering and centrality records")
@click.pass_context
def graph_centrality(ctx, graph_path, tol, max_iter, damping, out, metrics) -> None:
    """Eigenvector centrality and clustering coefficient per term."""
    config = _run_config(ctx, tol=tol, max_iter=max_iter, damping=damping)
    g = load_graph(graph_path)
    cm = eigenvector_centrality(g, config.tol, config.max_iter, config.damping)
    _emit(format_centrality_tsv(g, cm), out)
    if metrics:
        write_atomic(metrics, records_to_bytes(graph_metrics(g, cm)))


@graph.command("ontology")
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--communities", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--centrality", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def graph_ontology(graph_path, communities, centrality, out) -> None:
    """Head-term ontology from communities and centrality."""
    g = load_graph(graph_path)
    _, assignment = load_communities(communities)
    cm = load_centrality(centrality)
    _emit(format_ontology(extract_ontology(g, assignment, cm)), out)


@cli.group()
def pheno() -> None:
    """Phenotype taxonomies from term embeddings."""


@pheno.command("cluster")
@click.option("--embeddings", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--cut-k", type=int, default=None, help="Number of flat clusters")
@click.option("--format", "fmt", type=click.Choice(["newick", "records"]), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Tree output path")
@click.option("--assignments", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def pheno_cluster(ctx, embeddings, cut_k, fmt, out, assignments) -> None:
    """Ward-linkage dendrogram and flat cut."""
    config = _run_config(ctx, cut_k=cut_k)
    dendrogram = hac_ward(load_embeddings(embeddings))
    tree = export_dendrogram(dendrogram, _format_for(out, fmt, "newick"))
    flat = format_assignments_tsv(cut_dendrogram(dendrogram, config.cut_k))
    _emit(tree, out)
    if assignments:
        write_atomic(assignments, flat)


@cli.command("pipeline")
@corpus_options
@graph_options
@click.option("--tau", type=float, default=None)
@click.option("--tol", type=float, default=None)
@click.option("--max-iter", type=int, default=None)
@click.option("--damping", type=float, default=None)
@click.option("--out-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def pipeline_command(ctx: click.Context, **flags) -> None:
    """Run extract, graph, communities, memberships, centrality and ontology."""
    written = pipeline(_run_config(ctx, **flags))
    for stage, path in written.items():
        click.echo(f"{stage}\t{path}")


@cli.command("synth")
@click.option("--n-docs", type=int, default=1000, show_default=True)
@click.option("--doc-length", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def synth(ctx, n_docs, doc_length, seed, out) -> None:
    """Write the synthetic corpus with planted phrases."""
    config = _run_config(ctx, seed=seed)
    _emit(corpus_to_bytes(generate_corpus(n_docs, doc_length, config.seed)), out)


def main() -> None:
    cli(prog_name="lexigraph")


if __name__ == "__main__":
    main()
