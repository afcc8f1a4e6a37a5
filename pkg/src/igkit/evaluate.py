"""Word-level agreement between two annotation runs.

Scoring happens on a merged label space: modifier variants fold into
their base component and the two object roles fold into one, so a
direct-object token predicted as an indirect object still counts as an
object hit.  Each component is scored by token-level precision, recall,
and F1 against the reference run, and the layer summary is their
unweighted (macro) average.  The two runs must describe the same
statements in the same order; the first divergence is reported by
statement id rather than silently skewing every downstream count.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from .labels import NONE_LABEL

__all__ = [
    "AlignmentError",
    "ComponentScore",
    "LayerReport",
    "merge_label",
    "merge_labels",
    "evaluate_labels",
    "format_table",
]

# Modifier variants score as their base component; both object roles
# score as one object class.
_MERGE = {
    "A-prop": "A",
    "B-prop": "B",
    "B-dir": "B",
    "B-ind": "B",
    "E-prop": "E",
    "P-prop": "P",
}

# Scored components per layer, in report order.
_COMPONENTS = {
    "regulative": (
        ("A", "Attribute"),
        ("B", "Object"),
        ("D", "Deontic"),
        ("I", "Aim"),
        ("CTX", "Context"),
    ),
    "constitutive": (
        ("E", "Entity"),
        ("P", "Property"),
        ("F", "Function"),
        ("M", "Modal"),
        ("CTX", "Context"),
    ),
}


class AlignmentError(ValueError):
    """The two runs do not describe the same statement sequence."""


def merge_label(label: str) -> str:
    return _MERGE.get(label, label)


def merge_labels(labels: dict[int, str]) -> dict[int, str]:
    return {index: merge_label(label) for index, label in labels.items()}


@dataclass(frozen=True)
class ComponentScore:
    label: str
    name: str
    tp: int
    fp: int
    fn: int

    @property
    def support(self) -> int:
        """Reference tokens carrying this component."""
        return self.tp + self.fn

    @property
    def predicted(self) -> int:
        return self.tp + self.fp

    @property
    def precision(self) -> float:
        return self.tp / self.predicted if self.predicted else 0.0

    @property
    def recall(self) -> float:
        return self.tp / self.support if self.support else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    @property
    def scored(self) -> bool:
        """Whether the component occurred at all, in either run."""
        return self.support > 0 or self.predicted > 0

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "name": self.name,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "support": self.support,
            "scored": self.scored,
        }


@dataclass(frozen=True)
class LayerReport:
    layer: str
    components: tuple[ComponentScore, ...]
    statement_count: int
    token_count: int

    def component(self, label: str) -> ComponentScore:
        for score in self.components:
            if score.label == label or score.name == label:
                return score
        raise KeyError(f"no component {label!r} in {self.layer} report")

    def _scored(self) -> list[ComponentScore]:
        return [c for c in self.components if c.scored]

    @property
    def precision(self) -> float:
        scored = self._scored()
        return sum(c.precision for c in scored) / len(scored) if scored else 0.0

    @property
    def recall(self) -> float:
        scored = self._scored()
        return sum(c.recall for c in scored) / len(scored) if scored else 0.0

    @property
    def f1(self) -> float:
        scored = self._scored()
        return sum(c.f1 for c in scored) / len(scored) if scored else 0.0

    def to_dict(self) -> dict:
        return {
            "layer": self.layer,
            "statement_count": self.statement_count,
            "token_count": self.token_count,
            "averaging": "macro over components present in either run",
            "components": [c.to_dict() for c in self.components],
            "overall": {
                "precision": self.precision,
                "recall": self.recall,
                "f1": self.f1,
            },
        }


def _labelled(statement) -> tuple[str, dict[int, str]]:
    """Accept tagged statements, atomics, or their dict form."""
    if isinstance(statement, dict):
        sid = statement.get("id")
        labels = statement.get("labels")
        if sid is None or labels is None:
            raise ValueError("statement dict needs 'id' and 'labels'")
        return str(sid), {int(k): v for k, v in labels.items()}
    return statement.id, dict(statement.labels)


def _aligned(predicted, reference) -> list[tuple[str, dict[int, str], dict[int, str]]]:
    pred = [_labelled(s) for s in predicted]
    gold = [_labelled(s) for s in reference]
    for position, ((pred_id, pred_labels), (gold_id, gold_labels)) in enumerate(
        zip(pred, gold)
    ):
        if pred_id != gold_id:
            raise AlignmentError(
                f"statement {position} diverges: predicted run has "
                f"{pred_id!r}, reference has {gold_id!r}"
            )
        if set(pred_labels) != set(gold_labels):
            raise AlignmentError(
                f"statement {pred_id!r} has different token sets in the two runs"
            )
    if len(pred) != len(gold):
        longer, sid = (
            ("predicted", pred[len(gold)][0])
            if len(pred) > len(gold)
            else ("reference", gold[len(pred)][0])
        )
        raise AlignmentError(
            f"the {longer} run continues past the other, starting at "
            f"statement {sid!r}"
        )
    return [
        (pred_id, pred_labels, gold_labels)
        for (pred_id, pred_labels), (_, gold_labels) in zip(pred, gold)
    ]


def evaluate_labels(predicted, reference, layer: str) -> LayerReport:
    """Score a predicted run against a reference run, word by word.

    Swapping the two runs swaps precision and recall and leaves F1
    unchanged.  Tokens whose merged label is NONE in both runs do not
    enter any component count.
    """
    if layer not in _COMPONENTS:
        raise ValueError(f"unknown layer {layer!r}")
    pairs = _aligned(predicted, reference)
    counts = {label: [0, 0, 0] for label, _ in _COMPONENTS[layer]}
    tokens = 0
    for _, pred_labels, gold_labels in pairs:
        for index in pred_labels:
            tokens += 1
            pred = merge_label(pred_labels[index])
            gold = merge_label(gold_labels[index])
            if pred == gold:
                if pred in counts:
                    counts[pred][0] += 1
                continue
            if pred in counts:
                counts[pred][1] += 1
            if gold in counts:
                counts[gold][2] += 1
    components = tuple(
        ComponentScore(label=label, name=name, tp=tp, fp=fp, fn=fn)
        for (label, name), (tp, fp, fn) in zip(
            _COMPONENTS[layer], (counts[label] for label, _ in _COMPONENTS[layer])
        )
    )
    return LayerReport(
        layer=layer,
        components=components,
        statement_count=len(pairs),
        token_count=tokens,
    )


def format_table(report: LayerReport) -> str:
    """The report as a fixed-width text table, one row per component."""
    out = io.StringIO()
    title = f"{report.layer.capitalize()} layer"
    out.write(
        f"{title}: {report.statement_count} statements, "
        f"{report.token_count} tokens (word level)\n"
    )
    rows = [
        (c.name, c.f1, c.precision, c.recall, c.scored) for c in report.components
    ]
    rows.append(("Overall", report.f1, report.precision, report.recall, True))
    width = max(len(name) for name, *_ in rows)
    out.write(f"{'Component'.ljust(width)}  {'F1':>6}  {'Precision':>9}  {'Recall':>6}\n")
    for name, f1, precision, recall, scored in rows:
        if scored:
            cells = f"{f1:>6.3f}  {precision:>9.3f}  {recall:>6.3f}"
        else:
            cells = f"{'-':>6}  {'-':>9}  {'-':>6}"
        out.write(f"{name.ljust(width)}  {cells}\n")
    return out.getvalue()
