"""Construction traces recorded in the ``provenance`` field of emitted designs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class ConstructionTrace:
    op: str
    params: dict = field(default_factory=dict)
    children: list = field(default_factory=list)
    labels: Any = None

    def to_dict(self) -> dict:
        out = {"op": self.op, "params": self.params}
        if self.labels is not None:
            out["labels"] = self.labels
        if self.children:
            out["children"] = [c.to_dict() if isinstance(c, ConstructionTrace) else c
                               for c in self.children]
        return out


def leaf(op: str, **params) -> dict:
    return ConstructionTrace(op, params).to_dict()


def provenance_of(design) -> dict:
    return design.provenance if isinstance(design.provenance, dict) else {"op": "unrecorded"}
