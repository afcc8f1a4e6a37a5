"""igkit: institutional grammar annotation of dependency-parsed legal text.

The toolkit turns CoNLL-U parses of legal provisions into labeled
institutional statements, expands them into atomic statements, links the
entities they mention into a hypergraph, and reports visibility and
centrality measures over that graph.
"""

from .classify import classify_statement, fit_tfidf, train_forest, vectorize
from .conllu import DepTree, Document, Token, load_document, parse_conllu
from .entities import (
    EntityHypergraph,
    EntityLexicon,
    EntityMatch,
    build_hypergraph,
    default_lexicon,
    match_entities,
)
from .evaluate import evaluate_labels, format_table
from .labels import StatementType, legal_labels
from .metrics import (
    all_centralities,
    all_visibilities,
    closeness_centrality,
    distances,
    entity_visibility,
    metrics_report,
    quadrant_analysis,
    visibility,
)
from .pipeline import (
    PipelineConfig,
    PipelineError,
    recompute_metrics,
    run_pipeline,
)
from .splitter import AtomicStatement, expand, expansion_size, find_chains
from .store import CorpusStore
from .tagger import RuleEngine, TaggedStatement, default_engine

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # parsing
    "Token", "DepTree", "Document", "parse_conllu", "load_document",
    # labels and tagging
    "StatementType", "legal_labels", "RuleEngine", "TaggedStatement",
    "default_engine",
    # statement typing
    "classify_statement", "fit_tfidf", "train_forest", "vectorize",
    # atomic expansion
    "AtomicStatement", "expand", "expansion_size", "find_chains",
    # entities and the hypergraph
    "EntityLexicon", "EntityMatch", "EntityHypergraph", "default_lexicon",
    "match_entities", "build_hypergraph",
    # measures
    "visibility", "entity_visibility", "all_visibilities", "distances",
    "closeness_centrality", "all_centralities", "quadrant_analysis",
    "metrics_report",
    # evaluation
    "evaluate_labels", "format_table",
    # corpus, pipeline, review
    "CorpusStore", "PipelineConfig", "PipelineError", "run_pipeline",
    "recompute_metrics",
]
