"""Disk-backed corpus store: documents, annotations, models, search.

Everything lives in one directory of JSON files, diff-able and small
enough for desk-scale corpora.  Automatic annotation output is never
mutated once written: expert corrections are stored as an overlay next
to it, so the raw tagger stays evaluable after any amount of review.
Every file write goes through a temp-file-and-rename, so a concurrent
reader sees the old state or the new one but never a half-written
record.  The search index is derived data; it is dropped whenever the
document set changes and rebuilt on demand.
"""

from __future__ import annotations

import json
import math
import os
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

from .classify import tokenize
from .conllu import Document, document_from_dict, document_to_dict
from .labels import legal_labels

__all__ = [
    "StoreError",
    "NotFoundError",
    "ConflictError",
    "LabelValidationError",
    "STATUS_AUTO",
    "STATUS_CORRECTED",
    "AnnotationRecord",
    "record_from_statement",
    "keyword_filter",
    "CorpusStore",
]

STATUS_AUTO = "auto"
STATUS_CORRECTED = "expert-corrected"
_STATEMENT_TYPES = ("regulative", "constitutive")
_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


class StoreError(Exception):
    """Base error for store operations."""


class NotFoundError(StoreError):
    """The requested document, statement, or model does not exist."""


class ConflictError(StoreError):
    """A write collides with an existing record."""


class LabelValidationError(StoreError):
    """A correction used labels outside the statement's vocabulary."""

    def __init__(self, message: str, offending: list[str]):
        super().__init__(message)
        self.offending = list(offending)


@dataclass(frozen=True)
class AnnotationRecord:
    """One statement's annotation: automatic output plus review overlay.

    ``labels`` and ``provenance`` are the untouched tagger output.  A
    correction fills ``corrected_labels`` with a complete label vector
    and flips the status; readers who want the reviewed view use
    ``effective_labels``.  The status only ever moves from automatic to
    expert-corrected; re-correcting stays expert-corrected.
    """

    document_id: str
    statement_id: str
    stype: str
    labels: dict[int, str]
    provenance: dict[int, str] = field(default_factory=dict)
    flags: tuple[str, ...] = ()
    atomics: tuple[dict, ...] = ()
    status: str = STATUS_AUTO
    note: str = ""
    corrected_labels: dict[int, str] | None = None

    def __post_init__(self) -> None:
        if self.stype not in _STATEMENT_TYPES:
            raise ValueError(f"unknown statement type {self.stype!r}")
        if self.status not in (STATUS_AUTO, STATUS_CORRECTED):
            raise ValueError(f"unknown review status {self.status!r}")
        if not self.statement_id:
            raise ValueError("statement id must be non-empty")

    @property
    def effective_labels(self) -> dict[int, str]:
        """The reviewed view: the correction if present, else the auto run."""
        if self.corrected_labels is not None:
            return dict(self.corrected_labels)
        return dict(self.labels)

    def to_dict(self) -> dict:
        return {
            "document": self.document_id,
            "statement": self.statement_id,
            "stype": self.stype,
            "labels": {str(k): v for k, v in self.labels.items()},
            "provenance": {str(k): v for k, v in self.provenance.items()},
            "flags": list(self.flags),
            "atomics": [dict(a) for a in self.atomics],
            "status": self.status,
            "note": self.note,
            "corrected_labels": (
                None
                if self.corrected_labels is None
                else {str(k): v for k, v in self.corrected_labels.items()}
            ),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "AnnotationRecord":
        corrected = payload.get("corrected_labels")
        return cls(
            document_id=payload["document"],
            statement_id=payload["statement"],
            stype=payload["stype"],
            labels={int(k): v for k, v in payload["labels"].items()},
            provenance={int(k): v for k, v in payload.get("provenance", {}).items()},
            flags=tuple(payload.get("flags", ())),
            atomics=tuple(payload.get("atomics", ())),
            status=payload.get("status", STATUS_AUTO),
            note=payload.get("note", ""),
            corrected_labels=(
                None if corrected is None else {int(k): v for k, v in corrected.items()}
            ),
        )


def record_from_statement(
    statement, document_id: str, atomics: Iterable | None = None
) -> AnnotationRecord:
    """Wrap a tagged statement (and its expansion) as a store record."""
    return AnnotationRecord(
        document_id=document_id,
        statement_id=statement.id,
        stype=statement.layer,
        labels=dict(statement.labels),
        provenance=dict(statement.provenance),
        flags=tuple(statement.flags),
        atomics=tuple(a.to_dict() for a in (atomics or ())),
    )


def keyword_filter(document: Document, keywords: Iterable[str]) -> bool:
    """True iff any keyword occurs in the document's lemmas.

    An empty keyword list matches nothing.
    """
    lemmas = document.lemmas
    return any(keyword.lower() in lemmas for keyword in keywords)


def _write_json(path: Path, payload) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, ensure_ascii=False, indent=1, sort_keys=True)
        handle.write("\n")
    os.replace(tmp, path)


def _read_json(path: Path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


class CorpusStore:
    """A corpus directory: documents/, annotations/, models/, index.json."""

    def __init__(self, root) -> None:
        self.root = Path(root)
        self._documents = self.root / "documents"
        self._annotations = self.root / "annotations"
        self._models = self.root / "models"
        for directory in (self.root, self._documents, self._annotations, self._models):
            directory.mkdir(parents=True, exist_ok=True)
        self._index_path = self.root / "index.json"
        self._index_cache: dict | None = None

    # -- documents ---------------------------------------------------

    def _document_path(self, document_id: str) -> Path:
        if not _ID_RE.match(document_id):
            raise ValueError(
                f"document id {document_id!r} must be a plain token "
                "(letters, digits, dot, dash, underscore)"
            )
        return self._documents / f"{document_id}.json"

    def put_document(self, document: Document, overwrite: bool = False) -> None:
        path = self._document_path(document.id)
        if path.exists() and not overwrite:
            raise ConflictError(f"document {document.id!r} already exists")
        _write_json(path, document_to_dict(document))
        self._drop_index()

    def get_document(self, document_id: str) -> Document:
        path = self._document_path(document_id)
        if not path.exists():
            raise NotFoundError(f"no document {document_id!r}")
        return document_from_dict(_read_json(path))

    def has_document(self, document_id: str) -> bool:
        return self._document_path(document_id).exists()

    def list_documents(self) -> list[str]:
        return sorted(p.stem for p in self._documents.glob("*.json"))

    # -- annotations -------------------------------------------------

    def _annotation_path(self, document_id: str) -> Path:
        self._document_path(document_id)  # id validation
        return self._annotations / f"{document_id}.json"

    def put_annotations(
        self, document_id: str, records: Iterable[AnnotationRecord]
    ) -> None:
        """Replace the document's annotation set in one atomic write."""
        records = list(records)
        seen: set[str] = set()
        for record in records:
            if record.document_id != document_id:
                raise ValueError(
                    f"record {record.statement_id!r} belongs to "
                    f"{record.document_id!r}, not {document_id!r}"
                )
            if record.statement_id in seen:
                raise ConflictError(
                    f"duplicate statement id {record.statement_id!r} "
                    f"in document {document_id!r}"
                )
            seen.add(record.statement_id)
        _write_json(
            self._annotation_path(document_id),
            [record.to_dict() for record in records],
        )

    def annotations(self, document_id: str) -> list[AnnotationRecord]:
        path = self._annotation_path(document_id)
        if not path.exists():
            raise NotFoundError(f"no annotations for document {document_id!r}")
        return [AnnotationRecord.from_dict(item) for item in _read_json(path)]

    def get_annotation(self, document_id: str, statement_id: str) -> AnnotationRecord:
        for record in self.annotations(document_id):
            if record.statement_id == statement_id:
                return record
        raise NotFoundError(
            f"no statement {statement_id!r} in document {document_id!r}"
        )

    def update_statement(
        self,
        document_id: str,
        statement_id: str,
        labels: Mapping | None = None,
        stype: str | None = None,
        note: str | None = None,
    ) -> AnnotationRecord:
        """Record an expert correction as an overlay on the auto output.

        ``labels`` may be partial; it merges onto the current effective
        vector.  Changing the statement type resets the overlay to
        all-NONE first, since labels of the old layer are meaningless in
        the new one.  Labels outside the statement type's vocabulary are
        rejected wholesale, naming every offender.
        """
        records = self.annotations(document_id)
        for position, record in enumerate(records):
            if record.statement_id == statement_id:
                break
        else:
            raise NotFoundError(
                f"no statement {statement_id!r} in document {document_id!r}"
            )

        new_stype = record.stype
        merged = record.effective_labels
        if stype is not None and stype != record.stype:
            if stype not in _STATEMENT_TYPES:
                raise ValueError(f"unknown statement type {stype!r}")
            new_stype = stype
            merged = {index: "NONE" for index in record.labels}

        if labels:
            updates = {int(k): v for k, v in labels.items()}
            unknown = sorted(set(updates) - set(record.labels))
            if unknown:
                raise LabelValidationError(
                    f"no such token index in {statement_id!r}: "
                    + ", ".join(str(i) for i in unknown),
                    offending=[str(i) for i in unknown],
                )
            vocabulary = legal_labels(new_stype)
            offending = sorted({v for v in updates.values() if v not in vocabulary})
            if offending:
                raise LabelValidationError(
                    f"labels not in the {new_stype} vocabulary: "
                    + ", ".join(offending),
                    offending=offending,
                )
            merged.update(updates)

        corrected = replace(
            record,
            stype=new_stype,
            status=STATUS_CORRECTED,
            note=record.note if note is None else note,
            corrected_labels=merged,
        )
        records[position] = corrected
        _write_json(
            self._annotation_path(document_id),
            [r.to_dict() for r in records],
        )
        return corrected

    def all_annotations(self) -> list[AnnotationRecord]:
        out: list[AnnotationRecord] = []
        for path in sorted(self._annotations.glob("*.json")):
            out.extend(AnnotationRecord.from_dict(item) for item in _read_json(path))
        return out

    # -- models ------------------------------------------------------

    def model_path(self, name: str) -> Path:
        if not _ID_RE.match(name):
            raise ValueError(f"model name {name!r} must be a plain token")
        return self._models / f"{name}.json"

    def save_model_payload(self, name: str, payload: dict) -> None:
        _write_json(self.model_path(name), payload)

    def load_model_payload(self, name: str) -> dict:
        path = self.model_path(name)
        if not path.exists():
            raise NotFoundError(f"no model {name!r}")
        return _read_json(path)

    def has_model(self, name: str) -> bool:
        return self.model_path(name).exists()

    # -- search ------------------------------------------------------

    def _drop_index(self) -> None:
        self._index_cache = None
        if self._index_path.exists():
            self._index_path.unlink()

    def build_index(self) -> dict:
        """Derive the inverted index from the stored documents.

        Postings are (document id, term frequency) pairs sorted by
        document id.  The result is persisted and cached; putting a
        document drops both.
        """
        postings: dict[str, list[list]] = {}
        metadata: dict[str, dict] = {}
        ids = self.list_documents()
        for document_id in ids:
            document = self.get_document(document_id)
            metadata[document_id] = dict(document.metadata)
            for term, count in Counter(tokenize(document.text)).items():
                postings.setdefault(term, []).append([document_id, count])
        for rows in postings.values():
            rows.sort(key=lambda row: row[0])
        index = {"documents": len(ids), "postings": postings, "metadata": metadata}
        _write_json(self._index_path, index)
        self._index_cache = index
        return index

    def _index(self) -> dict:
        if self._index_cache is None:
            if self._index_path.exists():
                self._index_cache = _read_json(self._index_path)
            else:
                self.build_index()
        return self._index_cache

    def search(
        self,
        query: str,
        filters: Mapping | None = None,
        limit: int | None = None,
    ) -> list[tuple[str, float]]:
        """Conjunctive term search ranked by summed tf-idf.

        Every query term must occur in a document for it to match;
        metadata filters are equality guards applied afterwards.  The
        result is (document id, score) pairs, best first, ties broken
        by document id.
        """
        terms = tokenize(query)
        if not terms:
            return []
        index = self._index()
        postings = index["postings"]
        total = index["documents"]
        scores: dict[str, float] = {}
        for term in set(terms):
            rows = postings.get(term)
            if not rows:
                return []
            frequency = {document_id: count for document_id, count in rows}
            idf = math.log((1 + total) / (1 + len(rows))) + 1.0
            if not scores:
                candidates = set(frequency)
            else:
                candidates = set(scores) & set(frequency)
            scores = {
                document_id: scores.get(document_id, 0.0)
                + frequency[document_id] * idf
                for document_id in candidates
            }
            if not scores:
                return []
        if filters:
            metadata = index["metadata"]
            scores = {
                document_id: score
                for document_id, score in scores.items()
                if all(
                    metadata.get(document_id, {}).get(key) == value
                    for key, value in filters.items()
                )
            }
        ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
        return ranked[:limit] if limit is not None else ranked
