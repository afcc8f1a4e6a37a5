"""Expansion of tagged statements into atomic statements.

A statement whose Aim, Attribute, or Object carries a ``conj`` chain stands
for the cross-product of its conjuncts.  Expansion chooses one member per
chain, drops the tokens the other members own, and copies everything shared
(Deontic, Context, and properties attached to the first conjunct) into every
sibling.  An adjective chain on the first noun of an object chain
distributes over all nouns, multiplying the product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from igkit.conllu import DepTree, Token
from igkit.labels import NONE_LABEL, PROP_VARIANT, StatementType
from igkit.tagger import Span, TaggedStatement

# labels whose conj chains expand; indirect objects and context never split
EXPANDABLE_LABELS = ("A", "E", "I", "F", "B-dir", "P")

# object-like chains whose first member may carry a distributive
# adjective chain
DISTRIBUTIVE_LABELS = ("B-dir", "P")


class ChainConflict(Exception):
    """A conjunct chain mixing labels; expansion must not guess."""


@dataclass
class Chain:
    label: str
    head: int
    members: list[int]

    def __len__(self):
        return len(self.members)


@dataclass
class AtomicStatement:
    """A restricted view of one parent statement: one member per chain."""

    id: str
    parent_statement: str
    layer: StatementType
    tagged: TaggedStatement
    choices: dict[str, int] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def tree(self) -> DepTree:
        return self.tagged.tree

    @property
    def labels(self) -> dict[int, str]:
        return self.tagged.labels

    def spans(self) -> list[Span]:
        return self.tagged.spans()

    def components(self) -> dict[str, list[Span]]:
        grouped: dict[str, list[Span]] = {}
        for span in self.spans():
            grouped.setdefault(span.label, []).append(span)
        return grouped

    @property
    def token_indices(self) -> list[int]:
        return [i for i, label in sorted(self.labels.items())
                if label != NONE_LABEL]

    @property
    def text(self) -> str:
        included = set(self.token_indices)
        return " ".join(t.surface for t in self.tree.tokens
                        if t.index in included)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "parent_statement": self.parent_statement,
            "stype": self.layer.value,
            "labels": {str(i): label for i, label in sorted(self.labels.items())},
            "components": {label: [s.to_dict() for s in spans]
                           for label, spans in self.components().items()},
            "text": self.text,
            "choices": dict(self.choices),
            "diagnostics": list(self.diagnostics),
        }


def _neighbors(tree: DepTree, index: int) -> list[int]:
    token = tree.token(index)
    out = [c.index for c in tree.children(index)]
    if token.head != 0:
        out.append(token.head)
    return out


def _collect_chain(statement: TaggedStatement, head: Token) -> Chain:
    """The conj chain rooted at ``head``: itself plus same-labeled conj
    descendants.  A differently labeled conjunct poisons the whole chain."""
    label = statement.labels[head.index]
    members = [head.index]
    stack = [head.index]
    while stack:
        current = stack.pop(0)
        for child in statement.tree.children(current, {"conj"}):
            child_label = statement.labels[child.index]
            if child_label != label:
                raise ChainConflict(
                    f"conjunct {child.surface!r} carries {child_label}, "
                    f"expected {label} (chain at {head.surface!r})")
            members.append(child.index)
            stack.append(child.index)
    return Chain(label=label, head=head.index, members=members)


def find_chains(statement: TaggedStatement) -> list[Chain]:
    """Expandable conj chains, heads in surface order.

    Raises ChainConflict when a chain mixes labels.
    """
    chains = []
    claimed: set[int] = set()
    for token in statement.tree.tokens:
        label = statement.labels[token.index]
        if label not in EXPANDABLE_LABELS or token.index in claimed:
            continue
        if token.head != 0 and statement.labels[token.head] == label:
            continue  # phrase-internal token or a later conjunct
        chain = _collect_chain(statement, token)
        claimed.update(chain.members)
        chains.append(chain)
    return chains


def _phrase(statement: TaggedStatement, member: int,
            other_members: set[int]) -> set[int]:
    """Same-label tokens connected to ``member`` without crossing another
    chain member (a conjunct's determiner travels with it; the next
    conjunct does not)."""
    label = statement.labels[member]
    seen = {member}
    stack = [member]
    while stack:
        current = stack.pop()
        for nb in _neighbors(statement.tree, current):
            if nb in seen or nb in other_members:
                continue
            if statement.labels[nb] == label:
                seen.add(nb)
                stack.append(nb)
    return seen


def _prop_root(statement: TaggedStatement, index: int) -> int:
    """Walk a property token up to the highest token of its property
    subtree (the one attached directly to a core-labeled head)."""
    prop_label = statement.labels[index]
    current = index
    while True:
        head = statement.tree.token(current).head
        if head == 0 or statement.labels[head] != prop_label:
            return current
        current = head


def _anchored_props(statement: TaggedStatement, phrase: set[int],
                    label: str) -> dict[int, set[int]]:
    """Property tokens hanging off ``phrase``, grouped by subtree root."""
    prop_label = PROP_VARIANT.get(label)
    if prop_label is None:
        return {}
    grouped: dict[int, set[int]] = {}
    for token in statement.tree.tokens:
        if statement.labels[token.index] != prop_label:
            continue
        root = _prop_root(statement, token.index)
        if statement.tree.token(root).head in phrase:
            grouped.setdefault(root, set()).add(token.index)
    return grouped


def _adjective_chain(statement: TaggedStatement, chain: Chain) -> list[int]:
    """Distributive adjective conjuncts on the chain's first member.

    Modifier chains distribute only when no later member carries its own
    adjectival property; otherwise every modifier stays with its noun.
    """
    if chain.label not in DISTRIBUTIVE_LABELS:
        return []
    prop_label = PROP_VARIANT[chain.label]
    for member in chain.members[1:]:
        if any(statement.labels[c.index] == prop_label
               for c in statement.tree.children(member, {"amod"})):
            return []
    first = chain.members[0]
    heads = [c for c in statement.tree.children(first, {"amod"})
             if statement.labels[c.index] == prop_label]
    if len(heads) != 1:
        return []
    adjectives = [heads[0].index]
    stack = [heads[0].index]
    while stack:
        current = stack.pop(0)
        for child in statement.tree.children(current, {"conj"}):
            child_label = statement.labels[child.index]
            if child_label != prop_label:
                raise ChainConflict(
                    f"conjunct {child.surface!r} carries {child_label}, "
                    f"expected {prop_label} (modifier chain at "
                    f"{heads[0].surface!r})")
            adjectives.append(child.index)
            stack.append(child.index)
    return adjectives


def distribute_modifiers(adjectives: list, nouns: list) -> list[tuple]:
    """Cartesian product of one adjective (or none) with each noun."""
    if not adjectives:
        return [(None, noun) for noun in nouns]
    return [(adj, noun) for adj, noun in itertools.product(adjectives, nouns)]


def _member_removal(statement: TaggedStatement, chain: Chain,
                    adjectives: list[int]) -> dict[int, set[int]]:
    """Tokens each member takes away when it is not the chosen one."""
    removal: dict[int, set[int]] = {}
    members = set(chain.members)
    for position, member in enumerate(chain.members):
        phrase = _phrase(statement, member, members - {member})
        owned = set(phrase)
        props = _anchored_props(statement, phrase, chain.label)
        for root, tokens in props.items():
            deprel = statement.tree.token(root).deprel
            if position == 0 and deprel not in ("amod",):
                continue  # nmod/acl properties of the first member are shared
            if position == 0 and root in adjectives:
                continue  # the distributive dimension handles these
            owned |= tokens
        removal[member] = owned
    return removal


def expand(statement: TaggedStatement) -> list[AtomicStatement]:
    """All atomic statements a tagged statement stands for.

    The result length is the product of the chain lengths (adjective
    distribution included).  A chain conflict refuses expansion: the
    statement comes back whole, with a diagnostic.
    """
    base_id = statement.id or "statement"

    def passthrough(diagnostics: list[str]) -> list[AtomicStatement]:
        return [AtomicStatement(
            id=f"{base_id}/a0",
            parent_statement=statement.id,
            layer=statement.layer,
            tagged=statement,
            diagnostics=diagnostics,
        )]

    try:
        chains = find_chains(statement)
        adjective_chains = {c.head: _adjective_chain(statement, c)
                            for c in chains}
    except ChainConflict as conflict:
        return [AtomicStatement(
            id=f"{base_id}/a0",
            parent_statement=statement.id,
            layer=statement.layer,
            tagged=statement,
            diagnostics=[f"expansion refused: {conflict}"],
        )]

    dimensions = []  # (choice key, [(removal-set, chosen index), ...])
    removals: dict[int, dict[int, set[int]]] = {}
    for chain in chains:
        adjectives = adjective_chains[chain.head]
        removals[chain.head] = _member_removal(statement, chain, adjectives)
        if len(chain) > 1:
            dimensions.append((
                f"{chain.label}:{chain.head}",
                [(chain.head, m) for m in chain.members],
            ))
        if len(adjectives) > 1:
            prop_label = PROP_VARIANT[chain.label]
            dimensions.append((
                f"{prop_label}:{adjectives[0]}",
                [(None, a) for a in adjectives],
            ))

    if not dimensions:
        return passthrough([])

    atomics = []
    for combo in itertools.product(*(options for _, options in dimensions)):
        excluded: set[int] = set()
        choices = {}
        for (key, options), (chain_head, chosen) in zip(dimensions, combo):
            choices[key] = chosen
            if chain_head is not None:
                for _, member in options:
                    if member != chosen:
                        excluded |= removals[chain_head][member]
            else:
                for _, adjective in options:
                    if adjective != chosen:
                        excluded.add(adjective)
        labels = {
            i: (label if i not in excluded else NONE_LABEL)
            for i, label in statement.labels.items()
        }
        view = TaggedStatement(
            id=f"{base_id}/a{len(atomics)}",
            layer=statement.layer,
            tree=statement.tree,
            labels=labels,
            provenance={i: r for i, r in statement.provenance.items()
                        if labels.get(i, NONE_LABEL) != NONE_LABEL},
            flags=list(statement.flags),
        )
        atomics.append(AtomicStatement(
            id=view.id,
            parent_statement=statement.id,
            layer=statement.layer,
            tagged=view,
            choices=choices,
        ))
    return atomics


def expansion_size(statement: TaggedStatement) -> int:
    """Predicted |expand(statement)| (1 when a conflict refuses the split)."""
    try:
        chains = find_chains(statement)
        factor = 1
        for chain in chains:
            factor *= max(len(chain), 1)
            adjectives = _adjective_chain(statement, chain)
            if len(adjectives) > 1:
                factor *= len(adjectives)
        return factor
    except ChainConflict:
        return 1
