"""Statement-type and legal-act classification: n-gram TF-IDF + random forest.

Both classifiers are small enough to train on desk-scale corpora, persist to
a single JSON file, and rerun bit-identically from a seed.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from igkit.labels import StatementType

WORD_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens, split on whitespace and punctuation."""
    return WORD_RE.findall(text.lower())


def extract_ngrams(text: str, n_min: int = 1, n_max: int = 3) -> Counter:
    """Counts of contiguous word n-grams for every n in [n_min, n_max]."""
    if n_min < 1:
        raise ValueError(f"n_min must be >= 1, got {n_min}")
    if n_max < n_min:
        raise ValueError(f"n_max must be >= n_min, got {n_max} < {n_min}")
    words = tokenize(text)
    counts: Counter = Counter()
    for n in range(n_min, n_max + 1):
        for i in range(len(words) - n + 1):
            counts[" ".join(words[i:i + n])] += 1
    return counts


@dataclass
class TfidfModel:
    vocabulary: list[str]
    idf: np.ndarray
    k: int
    n_min: int = 1
    n_max: int = 3
    truncated: bool = False  # fewer distinct terms than requested k
    _index: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.idf = np.asarray(self.idf, dtype=float)
        if len(self.vocabulary) != len(self.idf):
            raise ValueError("vocabulary and idf lengths differ")
        if len(set(self.vocabulary)) != len(self.vocabulary):
            raise ValueError("vocabulary entries must be unique")
        if np.any(self.idf < 0):
            raise ValueError("idf values must be >= 0")
        self._index = {term: i for i, term in enumerate(self.vocabulary)}


def _chi2_scores(term_presence: dict[str, set[int]], labels: list) -> dict[str, float]:
    """Chi-squared of binary term presence against the label distribution."""
    n = len(labels)
    classes = sorted(set(labels))
    class_count = Counter(labels)
    scores = {}
    for term, docs in term_presence.items():
        present = len(docs)
        absent = n - present
        score = 0.0
        for cls in classes:
            present_in_cls = sum(1 for d in docs if labels[d] == cls)
            for observed, row_total in ((present_in_cls, present),
                                        (class_count[cls] - present_in_cls, absent)):
                expected = row_total * class_count[cls] / n
                if expected > 0:
                    score += (observed - expected) ** 2 / expected
        scores[term] = score
    return scores


def fit_tfidf(corpus: list[str], k: int, n_min: int = 1, n_max: int = 3,
              labels: list | None = None) -> TfidfModel:
    """Fit idf over the corpus and keep the k most relevant n-grams.

    Relevance is chi-squared against ``labels`` when given, otherwise
    document frequency.  idf(t) = ln((1+N)/(1+df(t))) + 1.
    """
    if not corpus:
        raise ValueError("corpus must be non-empty")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if labels is not None and len(labels) != len(corpus):
        raise ValueError("labels must align with corpus")

    df: Counter = Counter()
    term_docs: dict[str, set[int]] = {}
    for doc_i, text in enumerate(corpus):
        terms = set(extract_ngrams(text, n_min, n_max))
        for term in terms:
            df[term] += 1
            term_docs.setdefault(term, set()).add(doc_i)

    if labels is not None:
        relevance = _chi2_scores(term_docs, list(labels))
    else:
        relevance = {term: float(count) for term, count in df.items()}
    # deterministic: score desc, then term asc
    ranked = sorted(relevance, key=lambda t: (-relevance[t], t))
    truncated = len(ranked) < k
    vocabulary = ranked[:k]

    n_docs = len(corpus)
    idf = np.array([math.log((1 + n_docs) / (1 + df[t])) + 1 for t in vocabulary])
    return TfidfModel(vocabulary=vocabulary, idf=idf, k=k,
                      n_min=n_min, n_max=n_max, truncated=truncated)


def vectorize(text: str, model: TfidfModel) -> np.ndarray:
    """tf x idf over the model vocabulary, L2-normalized (zero stays zero)."""
    counts = extract_ngrams(text, model.n_min, model.n_max) if text else Counter()
    vec = np.zeros(len(model.vocabulary))
    for term, count in counts.items():
        i = model._index.get(term)
        if i is not None:
            vec[i] = count * model.idf[i]
    norm = np.linalg.norm(vec)
    if norm > 0:
        vec /= norm
    return vec


# ---------------------------------------------------------------------------
# Random forest: bagged CART trees, Gini impurity, sqrt(k) features per split.
# ---------------------------------------------------------------------------

def _gini(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts / total
    return 1.0 - float(np.sum(p * p))


def _majority(y: np.ndarray, n_classes: int) -> int:
    return int(np.argmax(np.bincount(y, minlength=n_classes)))


def _build_tree(X: np.ndarray, y: np.ndarray, n_classes: int,
                rng: np.random.Generator, max_depth: int,
                min_leaf: int, max_features: int, depth: int = 0) -> dict:
    counts = np.bincount(y, minlength=n_classes)
    node = {"klass": int(np.argmax(counts))}
    if depth >= max_depth or len(y) < 2 * min_leaf or np.count_nonzero(counts) < 2:
        return node

    parent_impurity = _gini(counts)
    best = None  # (impurity, feature, threshold)
    features = rng.permutation(X.shape[1])[:max_features]
    for f in sorted(features):
        values = np.unique(X[:, f])
        if len(values) < 2:
            continue
        thresholds = (values[:-1] + values[1:]) / 2.0
        for thr in thresholds:
            mask = X[:, f] <= thr
            n_left = int(mask.sum())
            if n_left < min_leaf or len(y) - n_left < min_leaf:
                continue
            left = np.bincount(y[mask], minlength=n_classes)
            right = counts - left
            impurity = (n_left * _gini(left)
                        + (len(y) - n_left) * _gini(right)) / len(y)
            if best is None or impurity < best[0] - 1e-12:
                best = (impurity, int(f), float(thr))
    if best is None or best[0] >= parent_impurity - 1e-12:
        return node

    _, feature, threshold = best
    mask = X[:, feature] <= threshold
    node.update({
        "feature": feature,
        "threshold": threshold,
        "left": _build_tree(X[mask], y[mask], n_classes, rng,
                            max_depth, min_leaf, max_features, depth + 1),
        "right": _build_tree(X[~mask], y[~mask], n_classes, rng,
                             max_depth, min_leaf, max_features, depth + 1),
    })
    return node


def _tree_predict(node: dict, x: np.ndarray) -> int:
    while "feature" in node:
        node = node["left"] if x[node["feature"]] <= node["threshold"] else node["right"]
    return node["klass"]


@dataclass
class ForestModel:
    trees: list[dict]
    classes: list
    seed: int
    hyperparameters: dict = field(default_factory=dict)
    constant: bool = False  # degenerate single-class training set

    def votes(self, x: np.ndarray) -> Counter:
        return Counter(self.classes[_tree_predict(t, x)] for t in self.trees)

    def predict(self, x: np.ndarray):
        """Majority-vote label and its vote fraction."""
        votes = self.votes(x)
        top = max(votes.values())
        # deterministic tie handling: earliest class in self.classes order
        winners = [c for c in self.classes if votes.get(c, 0) == top]
        return winners[0], top / len(self.trees)

    def vote_fraction(self, x: np.ndarray, label) -> float:
        return self.votes(x).get(label, 0) / len(self.trees)


def train_forest(X, y, trees: int = 100, seed: int = 0, max_depth: int = 12,
                 min_leaf: int = 1, max_features: int | None = None) -> ForestModel:
    """Bagged CART forest, deterministic for a given seed."""
    X = np.asarray(X, dtype=float)
    y = list(y)
    if len(X) != len(y) or len(y) == 0:
        raise ValueError("X and y must be non-empty and aligned")
    classes = sorted(set(y), key=str)
    hyper = {"trees": trees, "max_depth": max_depth, "min_leaf": min_leaf,
             "max_features": max_features}
    if len(classes) == 1:
        return ForestModel(trees=[{"klass": 0}], classes=classes, seed=seed,
                           hyperparameters=hyper, constant=True)

    class_index = {c: i for i, c in enumerate(classes)}
    y_idx = np.array([class_index[label] for label in y])
    n_features = X.shape[1]
    if max_features is None:
        max_features = max(1, int(math.sqrt(n_features)))

    rng = np.random.default_rng(seed)
    built = []
    for _ in range(trees):
        sample = rng.integers(0, len(y), size=len(y))
        built.append(_build_tree(X[sample], y_idx[sample], len(classes), rng,
                                 max_depth, min_leaf, max_features))
    return ForestModel(trees=built, classes=classes, seed=seed,
                       hyperparameters=hyper)


def training_accuracy(model: ForestModel, X, y) -> float:
    X = np.asarray(X, dtype=float)
    hits = sum(1 for x, label in zip(X, y) if model.predict(x)[0] == label)
    return hits / len(y)


# ---------------------------------------------------------------------------
# Task-level wrappers
# ---------------------------------------------------------------------------

def classify_statement(text: str, tfidf: TfidfModel,
                       forest: ForestModel) -> tuple[StatementType, float]:
    """Statement typing; an even vote breaks toward constitutive."""
    vec = vectorize(text, tfidf)
    reg = forest.vote_fraction(vec, StatementType.REGULATIVE.value)
    con = forest.vote_fraction(vec, StatementType.CONSTITUTIVE.value)
    if reg > con:
        return StatementType.REGULATIVE, reg
    return StatementType.CONSTITUTIVE, max(con, 1.0 - reg)


def classify_legal_act(text: str, tfidf: TfidfModel,
                       forest: ForestModel) -> tuple[bool, float]:
    """Legal-act filter over full document text; empty text is not an act."""
    if not text.strip():
        return False, 0.0
    vec = vectorize(text, tfidf)
    label, confidence = forest.predict(vec)
    return bool(label), confidence


# ---------------------------------------------------------------------------
# Persistence: one JSON file per model pair
# ---------------------------------------------------------------------------

def save_model(path, tfidf: TfidfModel, forest: ForestModel, kind: str = "statement-type"):
    payload = {
        "kind": kind,
        "tfidf": {
            "vocabulary": tfidf.vocabulary,
            "idf": tfidf.idf.tolist(),
            "k": tfidf.k,
            "n_min": tfidf.n_min,
            "n_max": tfidf.n_max,
            "truncated": tfidf.truncated,
        },
        "forest": {
            "trees": forest.trees,
            "classes": forest.classes,
            "seed": forest.seed,
            "hyperparameters": forest.hyperparameters,
            "constant": forest.constant,
        },
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)


def load_model(path) -> tuple[TfidfModel, ForestModel, str]:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    t = payload["tfidf"]
    tfidf = TfidfModel(vocabulary=t["vocabulary"], idf=np.array(t["idf"]),
                       k=t["k"], n_min=t["n_min"], n_max=t["n_max"],
                       truncated=t.get("truncated", False))
    f = payload["forest"]
    forest = ForestModel(trees=f["trees"], classes=f["classes"], seed=f["seed"],
                         hyperparameters=f.get("hyperparameters", {}),
                         constant=f.get("constant", False))
    return tfidf, forest, payload.get("kind", "statement-type")
