"""REST endpoints for the review loop.

The server exposes the corpus store to the browser interface: list
documents, fetch statements with their labels, accept expert
corrections, recompute the measures over the reviewed view, and answer
search queries.  Corrections go through the store's overlay mechanism,
so the automatic annotation run stays intact underneath.  A built
single-page interface can be mounted at the root; the API works the
same without it.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .entities import EntityLexicon, default_lexicon
from .labels import legal_labels
from .pipeline import recompute_metrics
from .store import CorpusStore, LabelValidationError, NotFoundError

__all__ = ["create_app"]


class Correction(BaseModel):
    """PUT body for a label correction; all fields optional."""

    labels: dict[str, str] | None = None
    stype: str | None = None
    note: str | None = None


def _split_statement_id(statement_id: str) -> tuple[str, str]:
    document_id, separator, _ = statement_id.partition("/")
    if not separator:
        raise HTTPException(
            status_code=404,
            detail=f"malformed statement id {statement_id!r}; "
            "expected document/statement",
        )
    return document_id, statement_id


def create_app(
    corpus_dir,
    lexicon: EntityLexicon | None = None,
    weights: dict[int, int] | None = None,
    s: int = 1,
    denominator: str = "atomics",
    static_dir=None,
) -> FastAPI:
    store = CorpusStore(corpus_dir)
    lexicon = lexicon or default_lexicon()
    app = FastAPI(title="igkit review API")

    @app.get("/api/documents")
    def list_documents():
        out = []
        for document_id in store.list_documents():
            document = store.get_document(document_id)
            out.append(
                {
                    "id": document_id,
                    "metadata": document.metadata,
                    "sentences": len(document.sentences),
                }
            )
        return out

    @app.get("/api/documents/{document_id}/statements")
    def document_statements(document_id: str):
        try:
            document = store.get_document(document_id)
            records = store.annotations(document_id)
        except NotFoundError as missing:
            raise HTTPException(status_code=404, detail=str(missing))
        statements = []
        for record in records:
            tree = document.sentences[int(record.statement_id.rpartition("s")[2])]
            payload = record.to_dict()
            payload["effective_labels"] = {
                str(k): v for k, v in record.effective_labels.items()
            }
            payload["tokens"] = [
                {"index": token.index, "surface": token.surface}
                for token in tree.tokens
            ]
            statements.append(payload)
        return {"document": document_id, "statements": statements}

    @app.put("/api/statements/{statement_id:path}/labels")
    def correct_statement(statement_id: str, correction: Correction):
        document_id, full_id = _split_statement_id(statement_id)
        try:
            record = store.update_statement(
                document_id,
                full_id,
                labels=correction.labels,
                stype=correction.stype,
                note=correction.note,
            )
        except NotFoundError as missing:
            raise HTTPException(status_code=404, detail=str(missing))
        except LabelValidationError as invalid:
            raise HTTPException(
                status_code=422,
                detail={"message": str(invalid), "offending": invalid.offending},
            )
        except ValueError as bad:
            raise HTTPException(status_code=422, detail=str(bad))
        payload = record.to_dict()
        payload["effective_labels"] = {
            str(k): v for k, v in record.effective_labels.items()
        }
        return payload

    @app.post("/api/metrics/recompute")
    def recompute():
        report = recompute_metrics(
            store, lexicon=lexicon, weights=weights, s=s, denominator=denominator
        )
        if report is None:
            return {
                "statement_count": 0,
                "s": s,
                "rows": [],
                "quadrants": {
                    "defined": False,
                    "diagnostic": "empty corpus",
                    "visibility_median": None,
                    "centrality_median": None,
                    "rows": [],
                },
            }
        return report.to_dict()

    @app.get("/api/metrics/scatter")
    def scatter():
        path = store.root / "artifacts" / "scatter.json"
        if not path.exists():
            recompute()
        if not path.exists():
            return []
        return json.loads(path.read_text(encoding="utf-8"))

    @app.get("/api/search")
    def search(q: str = "", legal_act: bool | None = None, country: str | None = None):
        filters = {}
        if legal_act is not None:
            filters["legal_act"] = legal_act
        if country is not None:
            filters["country"] = country
        ranked = store.search(q, filters=filters or None)
        return [{"id": document_id, "score": score} for document_id, score in ranked]

    @app.get("/api/labels")
    def label_vocabularies():
        return {
            "regulative": sorted(legal_labels("regulative")),
            "constitutive": sorted(legal_labels("constitutive")),
        }

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
