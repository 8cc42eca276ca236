"""Labeled domains: map abstract point indices to structured objects."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence


@dataclass
class LabeledDomain:
    """Point labels for a constructed action.

    kind examples: "point", "ksubset", "subspace", "coset", "tuple",
    "element".  Labels must be pairwise distinct and hashable.
    """

    kind: str
    labels: Sequence[Any]
    description: str = ""
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("domain labels are not pairwise distinct")

    @property
    def size(self) -> int:
        return len(self.labels)

    def label_str(self, i: int) -> str:
        lab = self.labels[i]
        if self.kind == "subspace":
            return "<" + "; ".join(
                "".join(str(a) for a in row) for row in lab
            ) + ">"
        if self.kind in ("ksubset", "tuple"):
            return "{" + ",".join(str(x) for x in lab) + "}" \
                if self.kind == "ksubset" else "(" + ",".join(str(x) for x in lab) + ")"
        return str(lab)

    @classmethod
    def points(cls, n: int, description: str = "") -> "LabeledDomain":
        return cls("point", list(range(n)), description)
