"""Shared label vocabulary for institutional statements.

Regulative statements use: Attribute (A), Aim (I), Deontic (D), direct and
indirect Objects (B-dir, B-ind), property layers (A-prop, B-prop), Context
(CTX).  Constitutive statements use: constituted Entity (E), constitutive
Function (F), Modal (M), constituting Properties (P), property layers
(E-prop, P-prop), Context (CTX).  NONE marks tokens outside every component.
"""

from __future__ import annotations

from enum import Enum

NONE_LABEL = "NONE"

REGULATIVE_LABELS = ("A", "A-prop", "I", "D", "B-dir", "B-ind", "B-prop",
                     "CTX", NONE_LABEL)
CONSTITUTIVE_LABELS = ("E", "E-prop", "F", "M", "P", "P-prop",
                       "CTX", NONE_LABEL)
ALL_LABELS = tuple(dict.fromkeys(REGULATIVE_LABELS + CONSTITUTIVE_LABELS))

# property layer attached to each core component that can carry one
PROP_VARIANT = {
    "A": "A-prop",
    "B-dir": "B-prop",
    "B-ind": "B-prop",
    "E": "E-prop",
    "P": "P-prop",
}


class StatementType(str, Enum):
    REGULATIVE = "regulative"
    CONSTITUTIVE = "constitutive"


def legal_labels(layer: StatementType | str) -> tuple[str, ...]:
    layer = StatementType(layer)
    if layer is StatementType.REGULATIVE:
        return REGULATIVE_LABELS
    return CONSTITUTIVE_LABELS


def is_legal(label: str, layer: StatementType | str) -> bool:
    return label in legal_labels(layer)
