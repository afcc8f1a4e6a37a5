"""Rule-based component tagging of dependency trees.

The engine runs an ordered list of declarative rules to a fixpoint.  A rule
fires on tokens that match its anchor; once a token carries a label it is
never relabeled (first match wins), so the fixpoint exists and every label
keeps the id of the rule that produced it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from igkit.conllu import DepTree, Token, deprel_matches
from igkit.labels import NONE_LABEL, StatementType, is_legal, legal_labels


class RuleError(ValueError):
    """A rule definition that cannot be applied."""


@dataclass(frozen=True)
class Rule:
    id: str
    layer: str  # "regulative", "constitutive", or "any"
    target: str  # a label, or "inherit" to copy the anchor parent's label
    anchor: str = "child-of-root"  # root | child-of-root | child-of-label | child-of-any-label
    anchor_label: str | None = None
    relations: tuple[str, ...] = ()
    pos: tuple[str, ...] = ()
    lemma_in: str | None = None
    case_lemmas: tuple[str, ...] = ()
    expand: bool = False
    reconstructed: bool = False
    note: str = ""

    def __post_init__(self):
        if self.layer not in ("regulative", "constitutive", "any"):
            raise RuleError(f"rule {self.id}: unknown layer {self.layer!r}")
        if self.anchor not in ("root", "child-of-root", "child-of-label",
                               "child-of-any-label"):
            raise RuleError(f"rule {self.id}: unknown anchor {self.anchor!r}")
        if self.anchor == "child-of-label" and not self.anchor_label:
            raise RuleError(f"rule {self.id}: child-of-label needs anchor_label")
        if self.anchor != "root" and not self.relations:
            raise RuleError(f"rule {self.id}: child anchors need relations")
        if self.target == "inherit":
            if self.anchor not in ("child-of-label", "child-of-any-label"):
                raise RuleError(f"rule {self.id}: inherit needs a labeled parent")
        else:
            for layer in (("regulative", "constitutive")
                          if self.layer == "any" else (self.layer,)):
                if not is_legal(self.target, layer):
                    raise RuleError(
                        f"rule {self.id}: target {self.target!r} is not a "
                        f"{layer} label")

    @classmethod
    def from_dict(cls, d: dict) -> "Rule":
        return cls(
            id=d["id"],
            layer=d["layer"],
            target=d["target"],
            anchor=d.get("anchor", "child-of-root"),
            anchor_label=d.get("anchor_label"),
            relations=tuple(d.get("relations", ())),
            pos=tuple(d.get("pos", ())),
            lemma_in=d.get("lemma_in"),
            case_lemmas=tuple(d.get("case_lemmas", ())),
            expand=bool(d.get("expand", False)),
            reconstructed=bool(d.get("reconstructed", False)),
            note=d.get("note", ""),
        )

    def matches(self, tree: DepTree, token: Token, labels: dict[int, str],
                lexicons: dict[str, set[str]]) -> bool:
        if self.anchor == "root":
            if token.head != 0:
                return False
        else:
            if token.head == 0:
                return False
            if not deprel_matches(token.deprel, self.relations):
                return False
            parent_label = labels[token.head] if token.head else NONE_LABEL
            if self.anchor == "child-of-root":
                # the predicate core: the root itself plus tokens that carry
                # the root's label (coordinated aims or functions)
                root_label = labels[tree.root_index]
                if token.head != tree.root_index and not (
                        root_label != NONE_LABEL and parent_label == root_label):
                    return False
            elif self.anchor == "child-of-label":
                if parent_label != self.anchor_label:
                    return False
            else:  # child-of-any-label
                if parent_label == NONE_LABEL:
                    return False
        if self.pos and token.upos not in self.pos:
            return False
        if self.lemma_in is not None:
            lexicon = lexicons.get(self.lemma_in)
            if lexicon is None:
                raise RuleError(f"rule {self.id}: unknown lexicon {self.lemma_in!r}")
            if token.lemma.lower() not in lexicon:
                return False
        if self.case_lemmas:
            markers = {c.lemma.lower() for c in tree.children(token.index, {"case"})}
            if not markers & set(self.case_lemmas):
                return False
        return True

    def resolve_target(self, token: Token, labels: dict[int, str]) -> str:
        if self.target == "inherit":
            return labels[token.head]
        return self.target


@dataclass
class Span:
    """A maximal run of adjacent tokens sharing one label."""

    label: str
    start: int
    end: int
    indices: list[int]
    text: str

    def to_dict(self) -> dict:
        return {"label": self.label, "start": self.start, "end": self.end,
                "text": self.text}


@dataclass
class TaggedStatement:
    id: str
    layer: StatementType
    tree: DepTree
    labels: dict[int, str]
    provenance: dict[int, str] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    def label_of(self, index: int) -> str:
        return self.labels.get(index, NONE_LABEL)

    def tokens_with(self, label: str) -> list[Token]:
        return [t for t in self.tree.tokens if self.labels[t.index] == label]

    def _components(self) -> dict[int, int]:
        """Group same-labeled tokens connected through the tree.

        Two adjacent context subtrees stay apart this way, while a phrase
        labeled by several rules ("State" via closure, "Party" via the
        subject rule) stays together.
        """
        parent = {t.index: t.index for t in self.tree.tokens}

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for token in self.tree.tokens:
            label = self.labels[token.index]
            if (label != NONE_LABEL and token.head != 0
                    and self.labels.get(token.head) == label):
                parent[find(token.index)] = find(token.head)
        return {i: find(i) for i in parent}

    def spans(self) -> list[Span]:
        """Contiguous runs of one label within one dependency component."""
        component = self._components()
        spans: list[Span] = []
        run: list[Token] = []

        def close():
            if run:
                spans.append(Span(
                    label=self.labels[run[0].index],
                    start=run[0].index,
                    end=run[-1].index,
                    indices=[t.index for t in run],
                    text=" ".join(t.surface for t in run),
                ))

        for token in self.tree.tokens:
            label = self.labels[token.index]
            if label == NONE_LABEL:
                close()
                run = []
            elif (run and self.labels[run[-1].index] == label
                    and component[run[-1].index] == component[token.index]):
                run.append(token)
            else:
                close()
                run = [token]
        close()
        return spans

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "layer": self.layer.value,
            "labels": {str(i): label for i, label in sorted(self.labels.items())},
            "provenance": {str(i): r for i, r in sorted(self.provenance.items())},
            "flags": list(self.flags),
            "spans": [s.to_dict() for s in self.spans()],
        }


class RuleEngine:
    """Ordered rules applied to a fixpoint, one layer at a time."""

    def __init__(self, rules: list[Rule], lexicons: dict[str, list[str]]):
        ids = [r.id for r in rules]
        if len(set(ids)) != len(ids):
            raise RuleError("duplicate rule ids")
        self.rules = list(rules)
        self.lexicons = {name: {w.lower() for w in words}
                         for name, words in lexicons.items()}
        self._by_layer = {
            layer: [r for r in self.rules if r.layer in (layer.value, "any")]
            for layer in StatementType
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "RuleEngine":
        rules = [Rule.from_dict(d) for d in payload["rules"]]
        return cls(rules, payload.get("lexicons", {}))

    @classmethod
    def from_json(cls, path=None) -> "RuleEngine":
        if path is None:
            text = resources.files("igkit").joinpath("data/rules.json") \
                .read_text(encoding="utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return cls.from_dict(json.loads(text))

    def rule(self, rule_id: str) -> Rule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    def tag(self, tree: DepTree, layer: StatementType | str,
            statement_id: str = "") -> TaggedStatement:
        layer = StatementType(layer)
        rules = self._by_layer[layer]
        labels = {t.index: NONE_LABEL for t in tree.tokens}
        provenance: dict[int, str] = {}

        def assign(token: Token, label: str, rule: Rule):
            labels[token.index] = label
            provenance[token.index] = rule.id
            if rule.expand:
                for sub in tree.subtree(token.index):
                    if labels[sub.index] == NONE_LABEL:
                        labels[sub.index] = label
                        provenance[sub.index] = rule.id

        changed = True
        while changed:
            changed = False
            for rule in rules:
                for token in tree.tokens:
                    if labels[token.index] != NONE_LABEL:
                        continue
                    if rule.matches(tree, token, labels, self.lexicons):
                        assign(token, rule.resolve_target(token, labels), rule)
                        changed = True

        if labels[tree.root_index] == NONE_LABEL:
            # no root rule fired: nothing downstream is trustworthy
            labels = {t.index: NONE_LABEL for t in tree.tokens}
            provenance = {}
            flags = ["rule-1 precondition failed"]
        else:
            flags = self._flags(tree, layer, labels)
        return TaggedStatement(id=statement_id, layer=layer, tree=tree,
                               labels=labels, provenance=provenance, flags=flags)

    def _flags(self, tree: DepTree, layer: StatementType,
               labels: dict[int, str]) -> list[str]:
        flags = []
        if any(t.deprel in ("nsubj:pass", "aux:pass") for t in tree.tokens):
            flags.append("passive")
        assigned = set(labels.values())
        if layer is StatementType.REGULATIVE and "A" not in assigned:
            flags.append("missing attribute")
        if layer is StatementType.CONSTITUTIVE and "E" not in assigned:
            flags.append("missing entity")
        return flags


@lru_cache(maxsize=1)
def default_engine() -> RuleEngine:
    """The packaged rule set, loaded once."""
    return RuleEngine.from_json()


def tagged_statement_labels_legal(statement: TaggedStatement) -> bool:
    allowed = set(legal_labels(statement.layer))
    return all(label in allowed for label in statement.labels.values())
