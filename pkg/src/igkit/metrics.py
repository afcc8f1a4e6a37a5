"""Prominence and connectivity measures over the entity hypergraph.

Visibility weighs how often an entity is mentioned and in which slot:
a mention as the acting party counts for more than one buried in the
modifiers of an indirect object.  Centrality measures how close an
entity sits to every other entity through chains of co-mentioning
statements.  The two disagree in instructive ways, so the quadrant
analysis crosses them and names the four combinations.

Visibility is computed in exact rational arithmetic; two entities tie
only when their scores are genuinely equal, never through float
rounding.
"""

from __future__ import annotations

import csv
import io
import statistics
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .entities import ACTOR, EntityHypergraph

__all__ = [
    "DEFAULT_WEIGHTS",
    "visibility",
    "entity_occurrences",
    "entity_visibility",
    "all_visibilities",
    "distances",
    "closeness_centrality",
    "all_centralities",
    "QuadrantRow",
    "QuadrantResult",
    "quadrant_analysis",
    "MetricsRow",
    "MetricsReport",
    "metrics_report",
]

# Weight of one mention in each occurrence class.  Class 6 holds the
# main slots (attribute, entity), class 1 the modifiers of an indirect
# object; the weight equals the class number.
DEFAULT_WEIGHTS: dict[int, int] = {c: c for c in range(1, 7)}


def visibility(
    occurrences: Mapping[int, int],
    statements: int,
    weights: Mapping[int, int] | None = None,
) -> Fraction:
    """Weighted mention rate: sum of weight * count over the corpus size.

    ``occurrences`` maps occurrence class to mention count and
    ``statements`` is the number of atomic statements scanned.  The
    result is an exact fraction; a corpus of ten statements with two
    class-6 mentions and one class-4 mention scores exactly 16/10.
    """
    if statements <= 0:
        raise ValueError("statement count must be positive")
    weights = DEFAULT_WEIGHTS if weights is None else weights
    total = Fraction(0)
    for occurrence_class, count in occurrences.items():
        if count < 0:
            raise ValueError(
                f"negative count {count} for occurrence class {occurrence_class}"
            )
        if occurrence_class not in weights:
            raise ValueError(f"no weight for occurrence class {occurrence_class}")
        total += Fraction(weights[occurrence_class]) * count
    return total / statements


def entity_occurrences(graph: EntityHypergraph) -> dict[str, dict[int, int]]:
    """Mention counts per entity and occurrence class."""
    counts: dict[str, dict[int, int]] = {name: {} for name in graph.vertices}
    for match in graph.matches:
        per_class = counts[match.canonical]
        per_class[match.occurrence_class] = (
            per_class.get(match.occurrence_class, 0) + 1
        )
    return counts


def entity_visibility(
    graph: EntityHypergraph,
    entity: str,
    weights: Mapping[int, int] | None = None,
    statements: int | None = None,
) -> Fraction:
    """Visibility of one entity; the denominator defaults to the corpus size."""
    if entity not in graph.kinds:
        raise KeyError(f"unknown vertex {entity!r}")
    occurrences = entity_occurrences(graph)[entity]
    denominator = graph.statement_count if statements is None else statements
    return visibility(occurrences, denominator, weights)


def all_visibilities(
    graph: EntityHypergraph,
    weights: Mapping[int, int] | None = None,
    statements: int | None = None,
) -> dict[str, Fraction]:
    denominator = graph.statement_count if statements is None else statements
    return {
        name: visibility(occ, denominator, weights)
        for name, occ in entity_occurrences(graph).items()
    }


def distances(graph: EntityHypergraph, source: str, s: int = 1) -> dict[str, int]:
    """Shortest chain length from ``source`` to every reachable vertex.

    The distance to a vertex is the minimum number of hyperedges in a
    chain whose first edge contains the source, whose last contains the
    target, and whose consecutive edges share at least ``s`` vertices.
    Unreachable vertices are absent from the result; the source itself
    is never included.
    """
    if source not in graph.kinds:
        raise KeyError(f"unknown vertex {source!r}")
    if s < 1:
        raise ValueError("chain overlap s must be at least 1")
    edge_sets = [edge.vertices for edge in graph.edges]
    found: dict[str, int] = {}
    frontier = deque(i for i, e in enumerate(edge_sets) if source in e)
    visited = set(frontier)
    depth = 1
    while frontier:
        next_frontier: deque[int] = deque()
        for i in frontier:
            for vertex in edge_sets[i]:
                if vertex != source and vertex not in found:
                    found[vertex] = depth
            for j, other in enumerate(edge_sets):
                if j not in visited and len(edge_sets[i] & other) >= s:
                    visited.add(j)
                    next_frontier.append(j)
        frontier = next_frontier
        depth += 1
    return found


def closeness_centrality(graph: EntityHypergraph, vertex: str, s: int = 1) -> float:
    """Closeness restricted to the reachable set, scaled by its share.

    With R the vertices reachable from ``vertex`` and d their chain
    distances, the score is (|R| / sum d) * (|R| / (|V| - 1)), so a
    vertex central in a small component scores below one equally
    central in a component spanning the graph.  Isolated vertices
    score zero.
    """
    reach = distances(graph, vertex, s=s)
    if not reach:
        return 0.0
    total = sum(reach.values())
    size = len(reach)
    return (size / total) * (size / (len(graph.vertices) - 1))


def all_centralities(graph: EntityHypergraph, s: int = 1) -> dict[str, float]:
    return {name: closeness_centrality(graph, name, s=s) for name in graph.vertices}


@dataclass(frozen=True)
class QuadrantRow:
    """One actor placed in the visibility/centrality plane."""

    entity: str
    visibility: Fraction
    normalized_visibility: Fraction
    centrality: float
    quadrant: str
    residual: float

    def to_dict(self) -> dict:
        return {
            "entity": self.entity,
            "visibility": float(self.visibility),
            "normalized_visibility": float(self.normalized_visibility),
            "centrality": self.centrality,
            "quadrant": self.quadrant,
            "residual": self.residual,
        }


@dataclass(frozen=True)
class QuadrantResult:
    defined: bool
    rows: tuple[QuadrantRow, ...]
    diagnostic: str | None = None
    visibility_median: float | None = None
    centrality_median: float | None = None

    def to_dict(self) -> dict:
        return {
            "defined": self.defined,
            "diagnostic": self.diagnostic,
            "visibility_median": self.visibility_median,
            "centrality_median": self.centrality_median,
            "rows": [row.to_dict() for row in self.rows],
        }


def _classify(normalized: Fraction, centrality: float, v_median, c_median) -> str:
    high_visibility = normalized > v_median
    high_centrality = centrality > c_median
    if high_visibility and high_centrality:
        return "foreground"
    if high_visibility:
        return "overexposed"
    if high_centrality:
        return "background"
    return "minor"


def quadrant_analysis(
    entries: Mapping[str, tuple[Fraction, float]]
) -> QuadrantResult:
    """Split actors into quadrants by median visibility and centrality.

    ``entries`` maps actor name to (visibility, centrality).  Visibility
    is min-max normalized onto [0, 1]; each axis is then split at its
    median, strictly above counting as high.  High/high actors are in
    the foreground, low/low are minor, high centrality with low
    visibility marks background operators, and the reverse marks
    overexposed actors.  The residual (centrality minus normalized
    visibility) is negative for actors more talked about than connected.
    Fewer than two actors leave every split undefined.
    """
    if len(entries) < 2:
        return QuadrantResult(
            defined=False,
            rows=(),
            diagnostic=(
                "quadrant analysis needs at least two actors; "
                f"got {len(entries)}"
            ),
        )
    names = sorted(entries)
    raw = {name: entries[name][0] for name in names}
    centralities = {name: entries[name][1] for name in names}
    low, high = min(raw.values()), max(raw.values())
    if high == low:
        normalized = {name: Fraction(0) for name in names}
    else:
        normalized = {name: (raw[name] - low) / (high - low) for name in names}
    v_median = statistics.median(normalized.values())
    c_median = statistics.median(centralities.values())
    rows = tuple(
        QuadrantRow(
            entity=name,
            visibility=raw[name],
            normalized_visibility=normalized[name],
            centrality=centralities[name],
            quadrant=_classify(normalized[name], centralities[name], v_median, c_median),
            residual=centralities[name] - float(normalized[name]),
        )
        for name in names
    )
    return QuadrantResult(
        defined=True,
        rows=rows,
        visibility_median=float(v_median),
        centrality_median=float(c_median),
    )


@dataclass(frozen=True)
class MetricsRow:
    entity: str
    kind: str
    visibility: Fraction
    centrality: float
    mentions: int

    def to_dict(self) -> dict:
        return {
            "entity": self.entity,
            "kind": self.kind,
            "visibility": float(self.visibility),
            "centrality": self.centrality,
            "mentions": self.mentions,
        }


@dataclass(frozen=True)
class MetricsReport:
    """Per-entity measures plus the actor quadrant placement."""

    rows: tuple[MetricsRow, ...]
    quadrants: QuadrantResult
    statement_count: int
    s: int

    def to_dict(self) -> dict:
        return {
            "statement_count": self.statement_count,
            "s": self.s,
            "rows": [row.to_dict() for row in self.rows],
            "quadrants": self.quadrants.to_dict(),
        }

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["entity", "kind", "visibility", "centrality", "mentions"])
        for row in self.rows:
            writer.writerow(
                [
                    row.entity,
                    row.kind,
                    f"{float(row.visibility):.6f}",
                    f"{row.centrality:.6f}",
                    row.mentions,
                ]
            )
        return buffer.getvalue()

    def scatter(self) -> list[dict]:
        """Plot-ready points, one per entity."""
        return [
            {
                "entity": row.entity,
                "kind": row.kind,
                "visibility": float(row.visibility),
                "centrality": row.centrality,
            }
            for row in self.rows
        ]


def metrics_report(
    graph: EntityHypergraph,
    weights: Mapping[int, int] | None = None,
    statements: int | None = None,
    s: int = 1,
) -> MetricsReport:
    """All measures for every lexicon entity, most visible first."""
    scores = all_visibilities(graph, weights=weights, statements=statements)
    centralities = all_centralities(graph, s=s)
    occurrences = entity_occurrences(graph)
    rows = tuple(
        sorted(
            (
                MetricsRow(
                    entity=name,
                    kind=graph.kinds[name],
                    visibility=scores[name],
                    centrality=centralities[name],
                    mentions=sum(occurrences[name].values()),
                )
                for name in graph.vertices
            ),
            key=lambda row: (-row.visibility, row.entity),
        )
    )
    quadrants = quadrant_analysis(
        {
            name: (scores[name], centralities[name])
            for name in graph.vertices
            if graph.kinds[name] == ACTOR
        }
    )
    return MetricsReport(
        rows=rows,
        quadrants=quadrants,
        statement_count=graph.statement_count,
        s=s,
    )
