"""Command line entry points.

``igkit run`` executes the annotation pipeline from a config file;
``classify``, ``eval``, ``metrics``, and ``search`` expose the
individual capabilities; ``serve`` starts the review API.  Exit codes:
0 on success, 1 for input problems (missing or malformed files, bad
arguments), 2 when a pipeline stage fails mid-run.
"""

from __future__ import annotations

import json
from dataclasses import replace
from pathlib import Path

import click

from .classify import classify_statement, load_model
from .conllu import load_document
from .entities import EntityLexicon, default_lexicon
from .evaluate import evaluate_labels, format_table
from .pipeline import (
    TYPE_MODEL,
    PipelineConfig,
    PipelineError,
    heuristic_statement_type,
    recompute_metrics,
    run_pipeline,
)
from .store import CorpusStore
from .tagger import default_engine

EXIT_INPUT = 1
EXIT_STAGE = 2


def _abort(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    raise SystemExit(code)


def _load_config(path) -> PipelineConfig:
    try:
        return PipelineConfig.from_json(path)
    except (OSError, ValueError) as bad:
        _abort(EXIT_INPUT, str(bad))


def _lexicon_for(config: PipelineConfig) -> EntityLexicon:
    if config.lexicon:
        return EntityLexicon.from_json(config.lexicon)
    return default_lexicon()


def _weights_for(config: PipelineConfig) -> dict[int, int] | None:
    if config.weights is None:
        return None
    raw = json.loads(Path(config.weights).read_text(encoding="utf-8"))
    return {int(k): v for k, v in raw.items()}


@click.group()
def main() -> None:
    """Annotate parsed legal text, measure actors, review the results."""


@main.command(name="run")
@click.option("--config", "config_path", required=True,
              help="pipeline config JSON")
@click.option("--stage", "stages", multiple=True,
              help="run only these stages (repeatable, pipeline order)")
@click.option("--seed", type=int, default=None,
              help="override the configured seed")
def run_command(config_path: str, stages: tuple[str, ...], seed: int | None):
    """Run the annotation pipeline described by CONFIG."""
    config = _load_config(config_path)
    try:
        if stages:
            config = replace(config, stages=tuple(stages))
        if seed is not None:
            config = replace(config, seed=seed)
    except ValueError as bad:
        _abort(EXIT_INPUT, str(bad))
    try:
        manifest = run_pipeline(config)
    except PipelineError as failed:
        _abort(EXIT_STAGE, str(failed))
    except (OSError, ValueError) as bad:
        _abort(EXIT_INPUT, str(bad))
    for stage in manifest["order"]:
        counts = manifest["stages"][stage]["counts"]
        summary = ", ".join(f"{key}={value}" for key, value in sorted(counts.items()))
        click.echo(f"{stage}: {summary}")
    click.echo(f"manifest: {Path(config.corpus_dir) / 'manifest.json'}")


@main.command()
@click.option("--input", "input_path", required=True,
              help="parsed document (CoNLL-U)")
@click.option("--config", "config_path", default=None,
              help="corpus whose stored statement-type model should decide")
def classify(input_path: str, config_path: str | None):
    """Print the statement type of every sentence in a parsed document."""
    try:
        document = load_document(input_path)
    except (OSError, ValueError) as bad:
        _abort(EXIT_INPUT, str(bad))
    models = None
    if config_path is not None:
        config = _load_config(config_path)
        store = CorpusStore(config.corpus_dir)
        if store.has_model(TYPE_MODEL):
            tfidf, forest, _ = load_model(store.model_path(TYPE_MODEL))
            models = (tfidf, forest)
    engine = default_engine() if models is None else None
    for position, tree in enumerate(document.sentences):
        if models is not None:
            stype = classify_statement(tree.text, *models)[0].value
        else:
            stype = heuristic_statement_type(engine, tree)
        click.echo(f"{document.id}/s{position}\t{stype}")


def _labelled_records(path, layer: str) -> list[dict]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(payload, list):
        raise ValueError(
            f"{path}: expected a JSON list of statement label records"
        )
    return [item for item in payload if item.get("stype", layer) == layer]


@main.command(name="eval")
@click.option("--pred", "pred_path", required=True,
              help="predicted labels (JSON list of id/labels records)")
@click.option("--gold", "gold_path", required=True,
              help="reference labels in the same shape")
@click.option("--layer", required=True,
              type=click.Choice(["regulative", "constitutive"]))
@click.option("--json", "as_json", is_flag=True,
              help="emit the report as JSON instead of a table")
def eval_command(pred_path: str, gold_path: str, layer: str, as_json: bool):
    """Score predicted labels against a reference, word by word."""
    try:
        predicted = _labelled_records(pred_path, layer)
        reference = _labelled_records(gold_path, layer)
        report = evaluate_labels(predicted, reference, layer)
    except (OSError, ValueError) as bad:
        _abort(EXIT_INPUT, str(bad))
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=1, sort_keys=True))
    else:
        click.echo(format_table(report))


@main.command()
@click.option("--config", "config_path", required=True,
              help="pipeline config naming the corpus")
@click.option("--s", "s", type=int, default=None,
              help="chain overlap for centrality (defaults to the config)")
@click.option("--denominator", default=None,
              type=click.Choice(["atomics", "statements"]))
def metrics(config_path: str, s: int | None, denominator: str | None):
    """Recompute the measures from the reviewed labels; print CSV."""
    config = _load_config(config_path)
    try:
        report = recompute_metrics(
            CorpusStore(config.corpus_dir),
            lexicon=_lexicon_for(config),
            weights=_weights_for(config),
            s=config.s if s is None else s,
            denominator=denominator or config.denominator,
        )
    except (OSError, ValueError) as bad:
        _abort(EXIT_INPUT, str(bad))
    if report is None:
        click.echo("entity,kind,visibility,centrality,mentions")
    else:
        click.echo(report.to_csv(), nl=False)


@main.command()
@click.argument("query")
@click.option("--config", "config_path", required=True,
              help="pipeline config naming the corpus")
@click.option("--country", default=None, help="metadata filter")
@click.option("--legal-act/--no-legal-act", "legal_act", default=None,
              help="metadata filter")
@click.option("--limit", type=int, default=None)
def search(query: str, config_path: str, country: str | None,
           legal_act: bool | None, limit: int | None):
    """Rank corpus documents against a keyword QUERY."""
    config = _load_config(config_path)
    store = CorpusStore(config.corpus_dir)
    filters = {}
    if country is not None:
        filters["country"] = country
    if legal_act is not None:
        filters["legal_act"] = legal_act
    for document_id, score in store.search(query, filters=filters or None,
                                           limit=limit):
        click.echo(f"{document_id}\t{score:.4f}")


@main.command()
@click.option("--config", "config_path", required=True,
              help="pipeline config naming the corpus")
@click.option("--port", type=int, default=8000)
@click.option("--host", default="127.0.0.1")
@click.option("--static", "static_dir", default=None,
              help="directory with the built review interface")
def serve(config_path: str, port: int, host: str, static_dir: str | None):
    """Start the review API (and, optionally, the interface) over HTTP."""
    import uvicorn

    from .server import create_app

    config = _load_config(config_path)
    app = create_app(
        config.corpus_dir,
        lexicon=_lexicon_for(config),
        weights=_weights_for(config),
        s=config.s,
        denominator=config.denominator,
        static_dir=static_dir,
    )
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
