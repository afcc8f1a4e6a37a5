"""Entity lexicons, span matching, and the actor/object hypergraph.

A lexicon lists the institutional entities of a corpus: actors such as
committees and parties, and objects such as funds and registers.  Each
entity carries one canonical name and one or more aliases, where an
alias is a sequence of lowercase lemmas.  Matching runs over the lemma
sequence of a tagged statement, restricted to the token regions whose
labels can denote an entity (attributes, objects, entities, properties,
and their modifier variants).  The matches of a corpus assemble into a
hypergraph with one hyperedge per atomic statement, which downstream
measures consume.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import resources

__all__ = [
    "LexiconError",
    "LexiconEntry",
    "EntityLexicon",
    "EntityMatch",
    "Hyperedge",
    "EntityHypergraph",
    "MATCHABLE_LABELS",
    "CORE_CLASS",
    "PROP_CLASS",
    "default_lexicon",
    "visibility_class",
    "match_entities",
    "build_hypergraph",
    "occurrence_histogram",
    "graph_to_dict",
    "graph_to_bipartite_csv",
]

ACTOR = "Actor"
OBJECT = "Object"
KINDS = (ACTOR, OBJECT)

# Labels whose tokens may mention an entity.  Deontics, aims, functions,
# modals, and context never hold entity mentions.
MATCHABLE_LABELS = frozenset(
    {"A", "B-dir", "B-ind", "E", "P", "A-prop", "B-prop", "E-prop", "P-prop"}
)

# Occurrence classes, from most to least prominent position.  Class 6 is
# a mention in a main slot (attribute or entity), class 1 a mention
# buried in the modifiers of an indirect object.
CORE_CLASS = {"A": 6, "E": 6, "B-dir": 5, "P": 5, "B-ind": 4}
PROP_CLASS = {"A": 3, "E": 3, "B-dir": 2, "P": 2, "B-ind": 1}

# Fallback when a modifier token has no labeled core ancestor (a clipped
# or hand-edited statement): assume the more prominent reading.
_PROP_FALLBACK = {"A-prop": 3, "E-prop": 3, "B-prop": 2, "P-prop": 2}


class LexiconError(ValueError):
    """Raised for a malformed or ambiguous entity lexicon."""


@dataclass(frozen=True)
class LexiconEntry:
    """One institutional entity: canonical name, kind, and aliases."""

    canonical: str
    kind: str
    aliases: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if not self.canonical:
            raise LexiconError("entity canonical name must be non-empty")
        if self.kind not in KINDS:
            raise LexiconError(
                f"entity {self.canonical!r} has kind {self.kind!r}; "
                f"expected one of {', '.join(KINDS)}"
            )
        if not self.aliases:
            raise LexiconError(f"entity {self.canonical!r} has no aliases")
        for alias in self.aliases:
            if not alias or any(not part for part in alias):
                raise LexiconError(
                    f"entity {self.canonical!r} has an empty alias component"
                )


class EntityLexicon:
    """An alias dictionary over institutional entities.

    Canonical names must be unique and no alias may belong to two
    entities, so every match resolves to exactly one entity.
    """

    def __init__(self, entries: list[LexiconEntry], name: str = "") -> None:
        self.name = name
        self.entries = list(entries)
        self._by_canonical: dict[str, LexiconEntry] = {}
        self._by_alias: dict[tuple[str, ...], LexiconEntry] = {}
        for entry in self.entries:
            if entry.canonical in self._by_canonical:
                raise LexiconError(f"duplicate entity {entry.canonical!r}")
            self._by_canonical[entry.canonical] = entry
            for alias in entry.aliases:
                key = tuple(part.lower() for part in alias)
                owner = self._by_alias.get(key)
                if owner is not None and owner.canonical != entry.canonical:
                    raise LexiconError(
                        f"alias {' '.join(key)!r} is claimed by both "
                        f"{owner.canonical!r} and {entry.canonical!r}"
                    )
                self._by_alias[key] = entry
        self._max_alias = max((len(a) for a in self._by_alias), default=0)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, canonical: str) -> bool:
        return canonical in self._by_canonical

    def entry(self, canonical: str) -> LexiconEntry:
        try:
            return self._by_canonical[canonical]
        except KeyError:
            raise LexiconError(f"unknown entity {canonical!r}") from None

    def kind_of(self, canonical: str) -> str:
        return self.entry(canonical).kind

    def names(self) -> list[str]:
        return [entry.canonical for entry in self.entries]

    def actors(self) -> list[str]:
        return [e.canonical for e in self.entries if e.kind == ACTOR]

    def objects(self) -> list[str]:
        return [e.canonical for e in self.entries if e.kind == OBJECT]

    def alias_at(self, lemmas: list[str], start: int) -> LexiconEntry | None:
        """Return the entry of the longest alias starting at ``start``."""
        limit = min(self._max_alias, len(lemmas) - start)
        for length in range(limit, 0, -1):
            entry = self._by_alias.get(tuple(lemmas[start : start + length]))
            if entry is not None:
                return entry
        return None

    def alias_length_at(self, lemmas: list[str], start: int) -> int:
        limit = min(self._max_alias, len(lemmas) - start)
        for length in range(limit, 0, -1):
            if tuple(lemmas[start : start + length]) in self._by_alias:
                return length
        return 0

    @classmethod
    def from_dict(cls, payload: dict) -> "EntityLexicon":
        raw = payload.get("entries")
        if not isinstance(raw, list):
            raise LexiconError("lexicon payload must carry an 'entries' list")
        entries = [
            LexiconEntry(
                canonical=item["canonical"],
                kind=item["kind"],
                aliases=tuple(tuple(alias) for alias in item["aliases"]),
            )
            for item in raw
        ]
        return cls(entries, name=payload.get("name", ""))

    @classmethod
    def from_json(cls, path: str) -> "EntityLexicon":
        with open(path, encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "entries": [
                {
                    "canonical": e.canonical,
                    "kind": e.kind,
                    "aliases": [list(alias) for alias in e.aliases],
                }
                for e in self.entries
            ],
        }


def default_lexicon() -> EntityLexicon:
    """The lexicon shipped for the intangible-heritage convention corpus."""
    source = resources.files("igkit.data").joinpath("ich_convention_lexicon.json")
    return EntityLexicon.from_dict(json.loads(source.read_text(encoding="utf-8")))


@dataclass(frozen=True)
class EntityMatch:
    """One mention of a lexicon entity inside a tagged statement."""

    statement_id: str
    canonical: str
    kind: str
    label: str
    occurrence_class: int
    indices: tuple[int, ...]
    text: str

    def to_dict(self) -> dict:
        return {
            "statement": self.statement_id,
            "entity": self.canonical,
            "kind": self.kind,
            "label": self.label,
            "class": self.occurrence_class,
            "tokens": list(self.indices),
            "text": self.text,
        }


def visibility_class(statement, index: int) -> int:
    """The occurrence class (1..6) of a matchable token.

    Core labels map directly.  Modifier labels take the class of the
    core component they decorate, found by walking head links upward;
    a modifier of an indirect object ranks below one of a direct
    object even though both carry the same label.
    """
    label = statement.labels[index]
    if label in CORE_CLASS:
        return CORE_CLASS[label]
    if label not in _PROP_FALLBACK:
        raise ValueError(f"token {index} carries non-entity label {label!r}")
    tree = statement.tree
    current = index
    while True:
        head = tree.token(current).head
        if head == 0:
            return _PROP_FALLBACK[label]
        head_label = statement.labels.get(head, "NONE")
        if head_label in CORE_CLASS:
            return PROP_CLASS[head_label]
        current = head


def _matchable_regions(statement) -> list[list[int]]:
    """Maximal surface-order runs of tokens with entity-capable labels."""
    regions: list[list[int]] = []
    run: list[int] = []
    for token in statement.tree.tokens:
        if statement.labels.get(token.index, "NONE") in MATCHABLE_LABELS:
            run.append(token.index)
        elif run:
            regions.append(run)
            run = []
    if run:
        regions.append(run)
    return regions


def match_entities(statement, lexicon: EntityLexicon) -> list[EntityMatch]:
    """All lexicon mentions inside one tagged or atomic statement.

    Within each matchable region the scan is leftmost-longest: at each
    position the longest alias wins, its tokens are consumed, and the
    scan resumes after it, so overlapping aliases resolve to the longer
    one and, at equal length, to the earlier one.  The class of a match
    is taken from its head token: the member whose syntactic head lies
    outside the match.
    """
    tree = statement.tree
    matches: list[EntityMatch] = []
    for region in _matchable_regions(statement):
        lemmas = [tree.token(i).lemma.lower() for i in region]
        pos = 0
        while pos < len(lemmas):
            entry = lexicon.alias_at(lemmas, pos)
            if entry is None:
                pos += 1
                continue
            length = lexicon.alias_length_at(lemmas, pos)
            indices = tuple(region[pos : pos + length])
            inside = set(indices)
            head_index = indices[-1]
            for i in indices:
                if tree.token(i).head not in inside:
                    head_index = i
                    break
            matches.append(
                EntityMatch(
                    statement_id=statement.id,
                    canonical=entry.canonical,
                    kind=entry.kind,
                    label=statement.labels[head_index],
                    occurrence_class=visibility_class(statement, head_index),
                    indices=indices,
                    text=" ".join(tree.token(i).surface for i in indices),
                )
            )
            pos += length
    return matches


@dataclass(frozen=True)
class Hyperedge:
    """The entity set mentioned by one atomic statement."""

    statement_id: str
    vertices: frozenset[str]

    def to_dict(self) -> dict:
        return {
            "statement": self.statement_id,
            "vertices": sorted(self.vertices),
        }


@dataclass
class EntityHypergraph:
    """Lexicon entities as vertices, statements as hyperedges.

    Every lexicon entity is a vertex even when nothing mentions it, so
    isolated entities stay visible to the centrality measures.  The
    statement count records how many statements were scanned, matched
    or not, which the visibility measure uses as its default weight
    denominator.
    """

    vertices: tuple[str, ...]
    kinds: dict[str, str]
    edges: list[Hyperedge]
    matches: list[EntityMatch] = field(default_factory=list)
    statement_count: int = 0

    def degree(self, vertex: str) -> int:
        if vertex not in self.kinds:
            raise KeyError(f"unknown vertex {vertex!r}")
        return sum(1 for edge in self.edges if vertex in edge.vertices)

    def incident(self, vertex: str) -> list[Hyperedge]:
        if vertex not in self.kinds:
            raise KeyError(f"unknown vertex {vertex!r}")
        return [edge for edge in self.edges if vertex in edge.vertices]


def build_hypergraph(statements, lexicon: EntityLexicon) -> EntityHypergraph:
    """Scan statements for entity mentions and assemble the hypergraph.

    One hyperedge per statement with at least one match; statements
    without matches add to the count but contribute no edge.
    """
    edges: list[Hyperedge] = []
    all_matches: list[EntityMatch] = []
    count = 0
    for statement in statements:
        count += 1
        found = match_entities(statement, lexicon)
        all_matches.extend(found)
        if found:
            edges.append(
                Hyperedge(
                    statement_id=statement.id,
                    vertices=frozenset(m.canonical for m in found),
                )
            )
    return EntityHypergraph(
        vertices=tuple(lexicon.names()),
        kinds={e.canonical: e.kind for e in lexicon.entries},
        edges=edges,
        matches=all_matches,
        statement_count=count,
    )


ACTORS_ONLY = "actors-only"
ACTORS_AND_OBJECTS = "actors-and-objects"


def occurrence_histogram(
    graph: EntityHypergraph, mode: str = ACTORS_AND_OBJECTS
) -> dict[int, int]:
    """How many statements connect k entities, for each k >= 1.

    In actors-only mode object vertices are dropped from each edge
    before counting, and edges left empty disappear.
    """
    if mode not in (ACTORS_ONLY, ACTORS_AND_OBJECTS):
        raise ValueError(
            f"unknown histogram mode {mode!r}; expected "
            f"{ACTORS_ONLY!r} or {ACTORS_AND_OBJECTS!r}"
        )
    histogram: dict[int, int] = {}
    for edge in graph.edges:
        members = edge.vertices
        if mode == ACTORS_ONLY:
            members = frozenset(v for v in members if graph.kinds[v] == ACTOR)
        if members:
            size = len(members)
            histogram[size] = histogram.get(size, 0) + 1
    return dict(sorted(histogram.items()))


def graph_to_dict(graph: EntityHypergraph) -> dict:
    return {
        "vertices": [
            {"name": name, "kind": graph.kinds[name]} for name in graph.vertices
        ],
        "edges": [edge.to_dict() for edge in graph.edges],
        "matches": [match.to_dict() for match in graph.matches],
        "statement_count": graph.statement_count,
    }


def graph_to_bipartite_csv(graph: EntityHypergraph) -> str:
    """Statement/entity incidence pairs as CSV, one row per membership."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["statement", "entity", "kind"])
    for edge in graph.edges:
        for vertex in sorted(edge.vertices):
            writer.writerow([edge.statement_id, vertex, graph.kinds[vertex]])
    return buffer.getvalue()
