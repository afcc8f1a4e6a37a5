"""The end-to-end run: ingest, classify, tag, split, graph, metrics, eval.

Each stage reads its inputs from the corpus store and persists its
outputs there, so stages are individually re-runnable; running one
again over unchanged inputs rewrites byte-identical files.  A full run
produces a manifest recording per-stage counts and the checksum of
every file written.  Nothing in a run depends on wall-clock time or
dictionary order, so two runs over the same inputs with the same seed
produce byte-identical manifests.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .classify import classify_statement, load_model
from .conllu import DepTree, load_document
from .entities import (
    EntityLexicon,
    build_hypergraph,
    default_lexicon,
    graph_to_bipartite_csv,
    graph_to_dict,
)
from .evaluate import ComponentScore, LayerReport, evaluate_labels, format_table
from .labels import StatementType
from .metrics import metrics_report
from .splitter import expand
from .store import CorpusStore, NotFoundError, record_from_statement
from .tagger import RuleEngine, TaggedStatement, default_engine

__all__ = [
    "STAGES",
    "TYPE_MODEL",
    "PipelineError",
    "PipelineConfig",
    "run_pipeline",
    "overlay_atomics",
    "recompute_metrics",
    "heuristic_statement_type",
    "format_table_from_dict",
]

STAGES = ("ingest", "classify", "tag", "split", "graph", "metrics", "eval")

# model name the classify stage looks for in the store
TYPE_MODEL = "statement-type"


class PipelineError(Exception):
    """A stage failed; the message names the stage and, when one is
    involved, the offending statement."""

    def __init__(self, stage: str, message: str, statement_id: str | None = None):
        self.stage = stage
        self.statement_id = statement_id
        where = f" at statement {statement_id!r}" if statement_id else ""
        super().__init__(f"stage {stage!r} failed{where}: {message}")


@dataclass
class PipelineConfig:
    """Everything a run needs; missing paths fail before any stage runs."""

    corpus_dir: str
    source_dir: str | None = None
    lexicon: str | None = None
    rules: str | None = None
    weights: str | None = None
    gold_types: str | None = None
    gold_labels: str | None = None
    stages: tuple[str, ...] = STAGES
    seed: int = 0
    denominator: str = "atomics"
    s: int = 1
    metadata_file: str = "metadata.json"

    def __post_init__(self) -> None:
        unknown = [stage for stage in self.stages if stage not in STAGES]
        if unknown:
            raise ValueError(f"unknown stages: {', '.join(unknown)}")
        if self.denominator not in ("atomics", "statements"):
            raise ValueError(
                f"denominator must be 'atomics' or 'statements', "
                f"got {self.denominator!r}"
            )
        if self.s < 1:
            raise ValueError("chain overlap s must be at least 1")

    @classmethod
    def from_json(cls, path) -> "PipelineConfig":
        path = Path(path)
        payload = json.loads(path.read_text(encoding="utf-8"))
        known = {f.name for f in fields(cls)}
        extra = set(payload) - known
        if extra:
            raise ValueError(f"unknown config keys: {', '.join(sorted(extra))}")
        if "stages" in payload:
            payload["stages"] = tuple(payload["stages"])
        config = cls(**payload)
        # resolve paths relative to the config file
        base = path.parent
        for name in ("corpus_dir", "source_dir", "lexicon", "rules",
                     "weights", "gold_types", "gold_labels"):
            value = getattr(config, name)
            if value is not None:
                setattr(config, name, str((base / value).resolve()))
        return config

    def validate(self) -> None:
        """Every referenced input must exist before the run starts."""
        for name in ("source_dir", "lexicon", "rules", "weights",
                     "gold_types", "gold_labels"):
            value = getattr(self, name)
            if value is not None and not Path(value).exists():
                raise FileNotFoundError(f"config {name} points at missing {value!r}")

    def echo(self) -> dict:
        """The manifest's record of what was configured."""

        def text(value):
            return None if value is None else str(value)

        return {
            "corpus_dir": text(self.corpus_dir),
            "source_dir": text(self.source_dir),
            "lexicon": text(self.lexicon),
            "rules": text(self.rules),
            "weights": text(self.weights),
            "gold_types": text(self.gold_types),
            "gold_labels": text(self.gold_labels),
            "stages": list(self.stages),
            "seed": self.seed,
            "denominator": self.denominator,
            "s": self.s,
        }


@dataclass
class _Run:
    config: PipelineConfig
    store: CorpusStore
    engine: RuleEngine
    lexicon: EntityLexicon
    weights: dict[int, int] | None
    artifacts: Path
    written: dict[str, list[Path]] = field(default_factory=dict)

    def record(self, stage: str, path: Path) -> Path:
        self.written.setdefault(stage, []).append(path)
        return path

    def write_artifact(self, stage: str, name: str, payload) -> Path:
        path = self.artifacts / name
        if isinstance(payload, str):
            tmp = path.with_name(path.name + ".tmp")
            tmp.write_text(payload, encoding="utf-8")
            tmp.replace(path)
        else:
            tmp = path.with_name(path.name + ".tmp")
            tmp.write_text(
                json.dumps(payload, ensure_ascii=False, indent=1, sort_keys=True)
                + "\n",
                encoding="utf-8",
            )
            tmp.replace(path)
        return self.record(stage, path)

    def read_artifact(self, stage: str, name: str, producer: str):
        path = self.artifacts / name
        if not path.exists():
            raise PipelineError(
                stage,
                f"missing input {name!r}; run the {producer!r} stage first",
            )
        return json.loads(path.read_text(encoding="utf-8"))


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


def _sentences(store: CorpusStore):
    """(document id, position, statement id, tree) for the whole corpus."""
    for document_id in store.list_documents():
        document = store.get_document(document_id)
        for position, tree in enumerate(document.sentences):
            yield document_id, position, f"{document_id}/s{position}", tree


def _count_nonnull(statement: TaggedStatement) -> int:
    return sum(1 for label in statement.labels.values() if label != "NONE")


def heuristic_statement_type(engine: RuleEngine, tree: DepTree) -> str:
    """Tag under both layers and keep the one that explains more tokens."""
    regulative = engine.tag(tree, layer="regulative")
    constitutive = engine.tag(tree, layer="constitutive")
    if _count_nonnull(regulative) > _count_nonnull(constitutive):
        return "regulative"
    return "constitutive"


# -- stages ------------------------------------------------------------


def _stage_ingest(run: _Run) -> dict:
    config = run.config
    documents = 0
    sentences = 0
    if config.source_dir is not None:
        source = Path(config.source_dir)
        metadata = {}
        metadata_path = source / config.metadata_file
        if metadata_path.exists():
            metadata = json.loads(metadata_path.read_text(encoding="utf-8"))
        for path in sorted(source.glob("*.conllu")):
            document = load_document(path)
            document.metadata = dict(metadata.get(document.id, {}))
            run.store.put_document(document, overwrite=True)
            run.record("ingest", run.store.root / "documents" / f"{document.id}.json")
            documents += 1
            sentences += len(document.sentences)
    return {"documents": documents, "sentences": sentences}


def _stage_classify(run: _Run) -> dict:
    config = run.config
    gold = None
    if config.gold_types is not None:
        gold = json.loads(Path(config.gold_types).read_text(encoding="utf-8"))
    models = None
    if run.store.has_model(TYPE_MODEL):
        tfidf, forest, _ = load_model(run.store.model_path(TYPE_MODEL))
        models = (tfidf, forest)
    stypes: dict[str, str] = {}
    counts = {"regulative": 0, "constitutive": 0, "from_gold": 0}
    for document_id, position, statement_id, tree in _sentences(run.store):
        if gold is not None and statement_id in gold:
            stype = gold[statement_id]
            if stype not in ("regulative", "constitutive"):
                raise PipelineError(
                    "classify",
                    f"gold type {stype!r} is not a statement type",
                    statement_id,
                )
            counts["from_gold"] += 1
        elif models is not None:
            predicted, _ = classify_statement(tree.text, *models)
            stype = predicted.value
        else:
            stype = heuristic_statement_type(run.engine, tree)
        stypes[statement_id] = stype
        counts[stype] += 1
    run.write_artifact("classify", "stypes.json", stypes)
    counts["statements"] = len(stypes)
    return counts


def _stage_tag(run: _Run) -> dict:
    stypes = run.read_artifact("tag", "stypes.json", producer="classify")
    counts = {"statements": 0, "flagged": 0, "wiped": 0}
    for document_id in run.store.list_documents():
        document = run.store.get_document(document_id)
        records = []
        for position, tree in enumerate(document.sentences):
            statement_id = f"{document_id}/s{position}"
            stype = stypes.get(statement_id)
            if stype is None:
                raise PipelineError(
                    "tag", "no statement type on record", statement_id
                )
            try:
                statement = run.engine.tag(tree, layer=stype, statement_id=statement_id)
            except Exception as error:
                raise PipelineError("tag", str(error), statement_id) from error
            records.append(record_from_statement(statement, document_id))
            counts["statements"] += 1
            if statement.flags:
                counts["flagged"] += 1
            if "rule-1 precondition failed" in statement.flags:
                counts["wiped"] += 1
        run.store.put_annotations(document_id, records)
        run.record("tag", run.store.root / "annotations" / f"{document_id}.json")
    return counts


def _stage_split(run: _Run) -> dict:
    counts = {"statements": 0, "atomics": 0, "refused": 0}
    for document_id in run.store.list_documents():
        try:
            records = run.store.annotations(document_id)
        except Exception as error:
            raise PipelineError("split", str(error)) from error
        document = run.store.get_document(document_id)
        updated = []
        for record in records:
            tree = document.sentences[int(record.statement_id.rpartition("s")[2])]
            statement = TaggedStatement(
                id=record.statement_id,
                layer=StatementType(record.stype),
                tree=tree,
                labels=dict(record.labels),
                provenance=dict(record.provenance),
                flags=list(record.flags),
            )
            try:
                atomics = expand(statement)
            except Exception as error:
                raise PipelineError("split", str(error), record.statement_id) from error
            counts["statements"] += 1
            counts["atomics"] += len(atomics)
            if any(
                d.startswith("expansion refused") for a in atomics for d in a.diagnostics
            ):
                counts["refused"] += 1
            updated.append(
                replace(record, atomics=tuple(a.to_dict() for a in atomics))
            )
        run.store.put_annotations(document_id, updated)
        run.record("split", run.store.root / "annotations" / f"{document_id}.json")
    return counts


def _build_graph(run: _Run, stage: str):
    """The hypergraph over the reviewed (overlay) view of the corpus."""
    try:
        atomics, parents = overlay_atomics(run.store)
    except Exception as error:
        raise PipelineError(stage, str(error)) from error
    return build_hypergraph(atomics, run.lexicon), parents


def _stage_graph(run: _Run) -> dict:
    graph, _ = _build_graph(run, "graph")
    run.write_artifact("graph", "graph.json", graph_to_dict(graph))
    run.write_artifact("graph", "graph.csv", graph_to_bipartite_csv(graph))
    return {
        "vertices": len(graph.vertices),
        "edges": len(graph.edges),
        "matches": len(graph.matches),
        "atomics": graph.statement_count,
    }


def _stage_metrics(run: _Run) -> dict:
    graph, parents = _build_graph(run, "metrics")
    statements = parents if run.config.denominator == "statements" else None
    if graph.statement_count == 0 and (statements is None or statements == 0):
        run.write_artifact("metrics", "metrics.json", {
            "statement_count": 0,
            "s": run.config.s,
            "rows": [],
            "quadrants": {"defined": False, "diagnostic": "empty corpus",
                          "visibility_median": None, "centrality_median": None,
                          "rows": []},
        })
        run.write_artifact("metrics", "scatter.json", [])
        run.write_artifact("metrics", "metrics.csv",
                           "entity,kind,visibility,centrality,mentions\n")
        return {"entities": 0, "actors": 0, "quadrants_defined": 0}
    report = metrics_report(
        graph, weights=run.weights, statements=statements, s=run.config.s
    )
    run.write_artifact("metrics", "metrics.json", report.to_dict())
    run.write_artifact("metrics", "metrics.csv", report.to_csv())
    run.write_artifact("metrics", "scatter.json", report.scatter())
    return {
        "entities": len(report.rows),
        "actors": len(report.quadrants.rows),
        "quadrants_defined": int(report.quadrants.defined),
    }


def _stage_eval(run: _Run) -> dict:
    config = run.config
    if config.gold_labels is None:
        return {"evaluated": 0, "skipped": 1}
    gold = json.loads(Path(config.gold_labels).read_text(encoding="utf-8"))
    by_layer: dict[str, list[dict]] = {"regulative": [], "constitutive": []}
    for item in gold:
        by_layer[item["stype"]].append(item)
    predictions: dict[str, dict] = {}
    for record in run.store.all_annotations():
        predictions[record.statement_id] = {
            "id": record.statement_id,
            "labels": {str(k): v for k, v in record.labels.items()},
        }
    payload = {}
    evaluated = 0
    for layer, items in by_layer.items():
        if not items:
            payload[layer] = None
            continue
        try:
            predicted = [predictions[item["id"]] for item in items]
        except KeyError as missing:
            raise PipelineError(
                "eval", "no prediction on record", str(missing.args[0])
            ) from missing
        try:
            report = evaluate_labels(predicted, items, layer=layer)
        except Exception as error:
            raise PipelineError("eval", str(error)) from error
        payload[layer] = report.to_dict()
        evaluated += report.statement_count
    run.write_artifact("eval", "eval.json", payload)
    tables = "\n".join(
        format_table_from_dict(layer, payload[layer])
        for layer in ("regulative", "constitutive")
        if payload.get(layer)
    )
    run.write_artifact("eval", "eval.txt", tables)
    return {"evaluated": evaluated, "skipped": 0}


def format_table_from_dict(layer: str, payload: dict) -> str:
    """Render a stored evaluation report without recomputing it."""
    components = tuple(
        ComponentScore(
            label=item["label"], name=item["name"],
            tp=item["tp"], fp=item["fp"], fn=item["fn"],
        )
        for item in payload["components"]
    )
    report = LayerReport(
        layer=layer,
        components=components,
        statement_count=payload["statement_count"],
        token_count=payload["token_count"],
    )
    return format_table(report)


_STAGE_FUNCTIONS = {
    "ingest": _stage_ingest,
    "classify": _stage_classify,
    "tag": _stage_tag,
    "split": _stage_split,
    "graph": _stage_graph,
    "metrics": _stage_metrics,
    "eval": _stage_eval,
}


def overlay_atomics(store: CorpusStore):
    """Re-expand every statement from its reviewed (effective) labels.

    For uncorrected statements this reproduces the stored expansion;
    for corrected ones it reflects the expert's labels.  Returns the
    atomic statements plus the parent statement count.
    """
    atomics = []
    parents = 0
    for document_id in store.list_documents():
        try:
            records = store.annotations(document_id)
        except NotFoundError:
            continue  # document not tagged yet
        document = store.get_document(document_id)
        for record in records:
            parents += 1
            tree = document.sentences[int(record.statement_id.rpartition("s")[2])]
            statement = TaggedStatement(
                id=record.statement_id,
                layer=StatementType(record.stype),
                tree=tree,
                labels=record.effective_labels,
                provenance=dict(record.provenance),
                flags=list(record.flags),
            )
            atomics.extend(expand(statement))
    return atomics, parents


def recompute_metrics(
    store: CorpusStore,
    lexicon: EntityLexicon | None = None,
    weights: dict[int, int] | None = None,
    s: int = 1,
    denominator: str = "atomics",
):
    """Rebuild graph and metrics artifacts from the reviewed view."""
    lexicon = lexicon or default_lexicon()
    atomics, parents = overlay_atomics(store)
    graph = build_hypergraph(atomics, lexicon)
    artifacts = store.root / "artifacts"
    artifacts.mkdir(exist_ok=True)

    def write(name: str, text: str) -> None:
        path = artifacts / name
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(text, encoding="utf-8")
        tmp.replace(path)

    write(
        "graph.json",
        json.dumps(graph_to_dict(graph), ensure_ascii=False, indent=1,
                   sort_keys=True) + "\n",
    )
    write("graph.csv", graph_to_bipartite_csv(graph))
    if graph.statement_count == 0:
        write("scatter.json", "[]\n")
        return None
    statements = parents if denominator == "statements" else None
    report = metrics_report(graph, weights=weights, statements=statements, s=s)
    write(
        "metrics.json",
        json.dumps(report.to_dict(), ensure_ascii=False, indent=1,
                   sort_keys=True) + "\n",
    )
    write("metrics.csv", report.to_csv())
    write(
        "scatter.json",
        json.dumps(report.scatter(), ensure_ascii=False, indent=1,
                   sort_keys=True) + "\n",
    )
    return report


def run_pipeline(config: PipelineConfig) -> dict:
    """Run the configured stages in order and write the manifest.

    Raises FileNotFoundError for missing inputs (before any stage runs)
    and PipelineError when a stage fails mid-run.
    """
    config.validate()
    store = CorpusStore(config.corpus_dir)
    engine = (
        RuleEngine.from_json(config.rules) if config.rules else default_engine()
    )
    lexicon = (
        EntityLexicon.from_json(config.lexicon) if config.lexicon else default_lexicon()
    )
    weights = None
    if config.weights is not None:
        raw = json.loads(Path(config.weights).read_text(encoding="utf-8"))
        weights = {int(k): v for k, v in raw.items()}
    artifacts = store.root / "artifacts"
    artifacts.mkdir(exist_ok=True)
    run = _Run(
        config=config,
        store=store,
        engine=engine,
        lexicon=lexicon,
        weights=weights,
        artifacts=artifacts,
    )

    manifest: dict = {
        "config": config.echo(),
        "seed": config.seed,
        "order": [stage for stage in STAGES if stage in config.stages],
        "stages": {},
    }
    for stage in manifest["order"]:
        try:
            counts = _STAGE_FUNCTIONS[stage](run)
        except PipelineError:
            raise
        except Exception as error:
            raise PipelineError(stage, str(error)) from error
        outputs = {
            str(path.relative_to(store.root)): _sha256(path)
            for path in sorted(set(run.written.get(stage, [])))
        }
        manifest["stages"][stage] = {"counts": counts, "outputs": outputs}

    manifest_path = store.root / "manifest.json"
    tmp = manifest_path.with_name("manifest.json.tmp")
    tmp.write_text(
        json.dumps(manifest, ensure_ascii=False, indent=1, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    tmp.replace(manifest_path)
    return manifest
