"""Corpus store: persistence, corrections, keyword filter, and search."""

import json
import math
from collections import Counter

import pytest

from conftest import SUBMIT, tree_of
from igkit.classify import tokenize
from igkit.conllu import DepTree, Document, Token, document_to_dict
from igkit.store import (
    STATUS_AUTO,
    STATUS_CORRECTED,
    AnnotationRecord,
    ConflictError,
    CorpusStore,
    LabelValidationError,
    NotFoundError,
    keyword_filter,
    record_from_statement,
)


def make_document(document_id, words, metadata=None):
    """A flat single-sentence document: first word is the root."""
    tokens = [
        Token(
            index=i + 1,
            surface=word,
            lemma=word.lower(),
            upos="NOUN" if i else "VERB",
            feats={},
            head=0 if i == 0 else 1,
            deprel="root" if i == 0 else "dep",
        )
        for i, word in enumerate(words)
    ]
    return Document(
        id=document_id, sentences=[DepTree(tokens)], metadata=metadata or {}
    )


@pytest.fixture()
def store(tmp_path):
    return CorpusStore(tmp_path / "corpus")


class TestDocuments:
    def test_round_trip(self, store):
        document = make_document("d1", ["protect", "heritage"], {"country": "fr"})
        store.put_document(document)
        loaded = store.get_document("d1")
        assert document_to_dict(loaded) == document_to_dict(document)

    def test_duplicate_put_conflicts(self, store):
        document = make_document("d1", ["protect"])
        store.put_document(document)
        with pytest.raises(ConflictError, match="d1"):
            store.put_document(document)
        store.put_document(document, overwrite=True)  # explicit replace is fine

    def test_missing_document(self, store):
        with pytest.raises(NotFoundError, match="nowhere"):
            store.get_document("nowhere")
        assert not store.has_document("nowhere")

    def test_listing_returns_every_id(self, store):
        for n in range(100):
            store.put_document(make_document(f"doc{n:03d}", ["word", f"w{n}"]))
        ids = store.list_documents()
        assert len(ids) == 100
        assert ids == sorted(ids)
        assert ids[0] == "doc000"

    def test_unsafe_id_rejected(self, store):
        with pytest.raises(ValueError, match="plain token"):
            store.put_document(make_document("../evil", ["x"]))


class TestAnnotations:
    def fixture_records(self, engine):
        statement = engine.tag(tree_of(SUBMIT), layer="regulative", statement_id="d1/s0")
        from igkit.splitter import expand

        return [record_from_statement(statement, "d1", atomics=expand(statement))]

    def test_round_trip(self, store, engine):
        records = self.fixture_records(engine)
        store.put_annotations("d1", records)
        loaded = store.annotations("d1")
        assert [r.to_dict() for r in loaded] == [r.to_dict() for r in records]
        assert loaded[0].status == STATUS_AUTO
        assert loaded[0].atomics[0]["id"] == "d1/s0/a0"

    def test_duplicate_statement_id_rejected(self, store, engine):
        records = self.fixture_records(engine) * 2
        with pytest.raises(ConflictError, match="d1/s0"):
            store.put_annotations("d1", records)

    def test_document_mismatch_rejected(self, store, engine):
        with pytest.raises(ValueError, match="belongs to"):
            store.put_annotations("d2", self.fixture_records(engine))

    def test_missing_lookups(self, store, engine):
        with pytest.raises(NotFoundError):
            store.annotations("d1")
        store.put_annotations("d1", self.fixture_records(engine))
        with pytest.raises(NotFoundError, match="d1/s9"):
            store.get_annotation("d1", "d1/s9")

    def test_bad_stype_rejected(self):
        with pytest.raises(ValueError, match="statement type"):
            AnnotationRecord(
                document_id="d", statement_id="d/s0", stype="imperative", labels={}
            )


class TestCorrections:
    def seed(self, store, engine):
        statement = engine.tag(tree_of(SUBMIT), layer="regulative", statement_id="d1/s0")
        store.put_annotations("d1", [record_from_statement(statement, "d1")])
        return statement

    def test_correction_flips_status_and_keeps_auto_run(self, store, engine):
        statement = self.seed(store, engine)
        corrected = store.update_statement(
            "d1", "d1/s0", labels={"16": "B-ind"}, note="form is the receiver"
        )
        assert corrected.status == STATUS_CORRECTED
        assert corrected.effective_labels[16] == "B-ind"
        assert corrected.note == "form is the receiver"
        # the automatic output is untouched underneath
        assert corrected.labels == statement.labels
        reloaded = store.get_annotation("d1", "d1/s0")
        assert reloaded.status == STATUS_CORRECTED
        assert reloaded.corrected_labels[16] == "B-ind"
        assert reloaded.labels[16] == statement.labels[16]

    def test_partial_update_merges_onto_effective(self, store, engine):
        self.seed(store, engine)
        store.update_statement("d1", "d1/s0", labels={"16": "B-ind"})
        second = store.update_statement("d1", "d1/s0", labels={"17": "NONE"})
        assert second.effective_labels[16] == "B-ind"
        assert second.effective_labels[17] == "NONE"
        assert second.status == STATUS_CORRECTED

    def test_illegal_label_listed(self, store, engine):
        self.seed(store, engine)
        with pytest.raises(LabelValidationError) as info:
            store.update_statement(
                "d1", "d1/s0", labels={"2": "E", "6": "F", "4": "I"}
            )
        assert info.value.offending == ["E", "F"]
        assert "E" in str(info.value) and "F" in str(info.value)
        # nothing was written
        assert store.get_annotation("d1", "d1/s0").status == STATUS_AUTO

    def test_unknown_token_index_listed(self, store, engine):
        self.seed(store, engine)
        with pytest.raises(LabelValidationError, match="99"):
            store.update_statement("d1", "d1/s0", labels={"99": "A"})

    def test_stype_flip_resets_overlay(self, store, engine):
        self.seed(store, engine)
        corrected = store.update_statement(
            "d1", "d1/s0", stype="constitutive", labels={"2": "E"}
        )
        assert corrected.stype == "constitutive"
        assert corrected.effective_labels[2] == "E"
        # all other tokens reset rather than keeping regulative labels
        assert corrected.effective_labels[4] == "NONE"
        assert corrected.labels[4] == "I"  # auto run still regulative underneath

    def test_missing_statement(self, store, engine):
        self.seed(store, engine)
        with pytest.raises(NotFoundError, match="d1/s7"):
            store.update_statement("d1", "d1/s7", labels={"1": "A"})

    def test_no_temp_files_left_behind(self, store, engine):
        self.seed(store, engine)
        store.update_statement("d1", "d1/s0", labels={"16": "B-ind"})
        leftovers = list(store.root.rglob("*.tmp"))
        assert leftovers == []

    def test_annotation_files_are_valid_json(self, store, engine):
        self.seed(store, engine)
        store.update_statement("d1", "d1/s0", labels={"16": "B-ind"})
        path = store.root / "annotations" / "d1.json"
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload[0]["status"] == STATUS_CORRECTED


class TestModels:
    def test_round_trip(self, store):
        store.save_model_payload("tfidf-statements", {"kind": "tfidf", "k": 70})
        assert store.load_model_payload("tfidf-statements") == {
            "kind": "tfidf",
            "k": 70,
        }
        assert store.has_model("tfidf-statements")

    def test_missing_model(self, store):
        with pytest.raises(NotFoundError, match="forest"):
            store.load_model_payload("forest")


class TestKeywordFilter:
    def test_lemma_hit(self):
        document = make_document("d1", ["Safeguarding", "Heritage", "matters"])
        assert keyword_filter(document, ["heritage"])
        assert keyword_filter(document, ["HERITAGE", "treaty"])

    def test_miss_and_empty(self):
        document = make_document("d1", ["Safeguarding", "nature"])
        assert not keyword_filter(document, ["heritage"])
        assert not keyword_filter(document, [])


SEARCH_DOCS = [
    ("d1", "the fund shall support heritage programmes", {"legal_act": True}),
    ("d2", "heritage heritage heritage programmes", {"legal_act": False}),
    ("d3", "the committee selects programmes", {"legal_act": True}),
    ("d4", "an entirely unrelated gardening manual", {"legal_act": False}),
    ("d5", "heritage fund fund fund", {"legal_act": True}),
]


def brute_force_search(query, docs, filters=None):
    """Independent ranking oracle over raw texts."""
    terms = set(tokenize(query))
    if not terms:
        return []
    total = len(docs)
    counts = {doc_id: Counter(tokenize(text)) for doc_id, text, _ in docs}
    metadata = {doc_id: meta for doc_id, _, meta in docs}
    results = []
    for doc_id in counts:
        if not all(counts[doc_id][t] > 0 for t in terms):
            continue
        if filters and any(metadata[doc_id].get(k) != v for k, v in filters.items()):
            continue
        score = 0.0
        for term in terms:
            df = sum(1 for c in counts.values() if c[term] > 0)
            idf = math.log((1 + total) / (1 + df)) + 1.0
            score += counts[doc_id][term] * idf
        results.append((doc_id, score))
    return sorted(results, key=lambda item: (-item[1], item[0]))


@pytest.fixture()
def search_store(tmp_path):
    store = CorpusStore(tmp_path / "corpus")
    for doc_id, text, metadata in SEARCH_DOCS:
        store.put_document(make_document(doc_id, text.split(), metadata))
    return store


class TestSearch:
    def test_unique_phrase_ranks_its_document_first(self, search_store):
        ranked = search_store.search("gardening manual")
        assert [doc_id for doc_id, _ in ranked] == ["d4"]

    def test_conjunctive_matching(self, search_store):
        ranked = search_store.search("heritage programmes")
        assert {doc_id for doc_id, _ in ranked} == {"d1", "d2"}
        assert search_store.search("heritage gardening") == []

    def test_ranking_matches_brute_force(self, search_store):
        for query in ("heritage", "fund", "heritage fund", "programmes", "the"):
            expected = brute_force_search(query, SEARCH_DOCS)
            actual = search_store.search(query)
            assert [d for d, _ in actual] == [d for d, _ in expected], query
            for (_, got), (_, want) in zip(actual, expected):
                assert got == pytest.approx(want)

    def test_filters_are_boolean_guards(self, search_store):
        ranked = search_store.search("heritage", filters={"legal_act": True})
        # d1 and d5 each mention it once and tie; the id breaks the tie
        assert [doc_id for doc_id, _ in ranked] == ["d1", "d5"]
        expected = brute_force_search("heritage", SEARCH_DOCS, {"legal_act": True})
        assert [d for d, _ in ranked] == [d for d, _ in expected]

    def test_empty_query(self, search_store):
        assert search_store.search("") == []
        assert search_store.search("   ") == []

    def test_limit(self, search_store):
        assert len(search_store.search("heritage", limit=2)) == 2

    def test_rebuild_yields_identical_results(self, search_store):
        before = search_store.search("heritage fund")
        (search_store.root / "index.json").unlink()
        search_store._index_cache = None
        after = search_store.search("heritage fund")
        assert after == before

    def test_new_document_enters_results(self, search_store):
        search_store.search("heritage")  # build the index
        search_store.put_document(
            make_document("d6", ["heritage"] * 10, {"legal_act": True})
        )
        ranked = search_store.search("heritage")
        assert ranked[0][0] == "d6"

    def test_index_file_is_derived_data(self, search_store):
        search_store.search("heritage")
        payload = json.loads(
            (search_store.root / "index.json").read_text(encoding="utf-8")
        )
        assert payload["documents"] == 5
        rows = payload["postings"]["heritage"]
        assert rows == sorted(rows, key=lambda r: r[0])
