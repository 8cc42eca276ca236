"""Permutations of {0..n-1} stored as immutable image tables.

Points are 0-based throughout the library.  The product ``p * q`` acts
"p first, then q", matching the right-action convention x^(pq) = (x^p)^q.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence


class Permutation:
    """A bijection of {0..degree-1}; ``images[i]`` is the image of point i."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError("image table is not a bijection of 0..n-1")
        self.images = imgs

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        """Build a permutation from disjoint cycles of 0-based points."""
        images = list(range(degree))
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated point in cycle {cycle}")
            for a, b in zip(cycle, cycle[1:]):
                if images[a] != a:
                    raise ValueError("cycles are not disjoint")
                images[a] = b
            if cycle:
                if images[cycle[-1]] != cycle[-1] and len(cycle) > 1:
                    raise ValueError("cycles are not disjoint")
                images[cycle[-1]] = cycle[0]
        return cls(images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} vs {other.degree}"
            )
        o = other.images
        return Permutation(o[i] for i in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, exponent: int) -> "Permutation":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Permutation.identity(self.degree)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycle decomposition, each cycle led by its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cycle.append(j)
                j = self.images[j]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_string(self) -> str:
        """Cycle notation like ``(0,1,2)(3,4)``; the identity prints ``()``."""
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"


_CYCLE_RE = re.compile(r"\(\s*([0-9]+(?:\s*,\s*[0-9]+)*)?\s*\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation ``(0,1,2)(3,4)`` into a Permutation.

    Round-trips with :meth:`Permutation.cycle_string`.  The degree is
    inferred from the largest point unless given explicitly.
    """
    stripped = text.replace(" ", "")
    if stripped in ("", "()"):
        return Permutation.identity(degree or 1)
    pos = 0
    cycles: list[list[int]] = []
    for m in _CYCLE_RE.finditer(stripped):
        if m.start() != pos:
            raise ValueError(f"cannot parse permutation at position {pos}: {text!r}")
        pos = m.end()
        if m.group(1):
            cycles.append([int(t) for t in m.group(1).split(",")])
    if pos != len(stripped):
        raise ValueError(f"cannot parse permutation at position {pos}: {text!r}")
    top = max((max(c) for c in cycles if c), default=-1)
    n = max(degree or 0, top + 1)
    return Permutation.from_cycles(n, cycles)


def parse_image_array(values: Sequence[int]) -> Permutation:
    """Build a permutation from a JSON-style image array."""
    return Permutation(values)


def all_cycles_of(images: Sequence[int]) -> Iterator[int]:
    """Yield cycle lengths of a raw image table, fixed points included."""
    seen = [False] * len(images)
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 1
        seen[start] = True
        j = images[start]
        while j != start:
            seen[j] = True
            length += 1
            j = images[j]
        yield length
