"""Closed-form bounds and difference-basis machinery.

All verdict arithmetic is exact: integer square roots, big integers and
rational comparisons.  The regular-action correspondence identifies
non-separable sets with difference bases A.A^-1 = G, which this module
searches for directly.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Optional

from .group import ElementTable, PermGroup


def neumann_lower(n: int, stabilizer_order: int) -> int:
    """Exact integer floor of the stabilizer-averaging lower bound.

    The bound is (1 + sqrt(4s^2 n - 4s + 1)) / (2s) with s the point
    stabilizer order; the returned value is the least integer m with
    (2sm - 1)^2 >= 4s^2 n - 4s + 1, which takes the ceiling strictly
    above the real value whenever the discriminant is not a perfect
    square.
    """
    if n < 2 or stabilizer_order < 1:
        raise ValueError("need n >= 2 and a positive stabilizer order")
    s = stabilizer_order
    disc = 4 * s * s * n - 4 * s + 1
    # least m with (2sm - 1)^2 >= disc
    from math import isqrt

    root = isqrt(disc)
    m = (root + 1 + 2 * s - 1) // (2 * s)  # first guess near (1+root)/(2s)
    while m > 1 and (2 * s * (m - 1) - 1) ** 2 >= disc:
        m -= 1
    while (2 * s * m - 1) ** 2 < disc:
        m += 1
    return m


def trivial_upper(n: int) -> int:
    """ceil((n+1)/2): two larger sets always meet."""
    if n < 2:
        raise ValueError("need n >= 2")
    return (n + 2) // 2


def wreath_bounds(m_bottom: int, m_top: int) -> tuple[int, int]:
    """Bracket for any group embedded in an imprimitive wreath product."""
    return m_bottom + m_top - 1, m_bottom * m_top


def product_action_upper(m_bottom: int, gamma: int) -> int:
    """Upper bound for wreath products in product action on tuples."""
    if gamma < 1:
        raise ValueError("need at least one coordinate")
    return m_bottom ** gamma


def sym_wreath_exact(a: int, b: int) -> int:
    """Exact value for Sym(a) wr Sym(b) in the imprimitive action."""
    if a < 2 or b < 2:
        raise ValueError("need a, b >= 2")
    if (a == 3 and b % 2 == 1) or (b == 3 and a % 2 == 1):
        return a + b - 2
    return a + b - 1


@dataclass
class BoundReport:
    n: int
    stabilizer_order: int
    lower: int
    upper: int
    rows: list[tuple[str, str, int]] = field(default_factory=list)
    # rows: (bound name, direction, value)

    def add(self, name: str, direction: str, value: int) -> None:
        self.rows.append((name, direction, value))


def bound_report(group: PermGroup) -> BoundReport:
    n = group.degree
    s = group.order // n
    rep = BoundReport(n, s, neumann_lower(n, s), trivial_upper(n))
    rep.add("stabilizer-average", "lower", rep.lower)
    rep.add("half-domain", "upper", rep.upper)
    return rep


# -- difference bases -------------------------------------------------------


@dataclass
class DifferenceBasis:
    """A set of elements whose pairwise quotients cover the whole group."""

    group_order: int
    elements: list[int]
    planar: bool
    exact: bool
    method: str

    @property
    def size(self) -> int:
        return len(self.elements)


def _coverage(table: ElementTable, subset: tuple[int, ...]) -> list[int]:
    counts = [0] * len(table)
    inv = table.inv
    mul = table.mul
    for a in subset:
        for b in subset:
            counts[mul(a, inv(b))] += 1
    return counts


def _covers_all(table: ElementTable, subset: tuple[int, ...]) -> bool:
    seen = bytearray(len(table))
    hits = 0
    inv = table.inv
    mul = table.mul
    total = len(table)
    for a in subset:
        for b in subset:
            g = mul(a, inv(b))
            if not seen[g]:
                seen[g] = 1
                hits += 1
                if hits == total:
                    return True
    return hits == total


def min_difference_basis(group: PermGroup,
                         budget_secs: Optional[float] = None,
                         ) -> DifferenceBasis:
    """Smallest difference basis, by size-ascending subset search.

    Identity membership is normalized (quotient sets are translation
    invariant).  Exact for small orders; budget exhaustion degrades to
    the best-known inexact answer.
    """
    table = ElementTable(group)
    n = len(table)
    if n == 1:
        return DifferenceBasis(1, [0], True, True, "exhaustive")
    start = time.monotonic()
    lo = neumann_lower(n, 1)
    for k in range(max(lo, 2), n + 1):
        for rest in itertools.combinations(range(1, n), k - 1):
            subset = (0,) + rest
            if _covers_all(table, subset):
                counts = _coverage(table, subset)
                planar = all(c == 1 for c in counts[1:])
                return DifferenceBasis(n, list(subset), planar, True,
                                       "exhaustive")
            if budget_secs is not None and \
                    time.monotonic() - start > budget_secs:
                greedy = _greedy_basis(table)
                return DifferenceBasis(n, greedy, False, False, "greedy")
    raise AssertionError("the whole group is always a difference basis")


def _greedy_basis(table: ElementTable) -> list[int]:
    n = len(table)
    chosen = [0]
    covered = bytearray(n)
    covered[0] = 1
    remaining = n - 1
    inv, mul = table.inv, table.mul
    while remaining > 0:
        best, best_gain = None, -1
        for cand in range(1, n):
            if cand in chosen:
                continue
            gain = 0
            for a in chosen + [cand]:
                g1 = mul(a, inv(cand))
                g2 = mul(cand, inv(a))
                if not covered[g1]:
                    gain += 1
                if g2 != g1 and not covered[g2]:
                    gain += 1
            if gain > best_gain:
                best, best_gain = cand, gain
        chosen.append(best)
        for a in chosen:
            for g in (mul(a, inv(best)), mul(best, inv(a))):
                if not covered[g]:
                    covered[g] = 1
                    remaining -= 1
    return chosen


def transversal_difference_basis(group: PermGroup, seed: int = 0,
                                 samples: int = 64) -> DifferenceBasis:
    """Difference basis from a cyclic subgroup and a left transversal.

    With G = X.H one has every g = x.h = x.(h^-1)^-1, so X union H is a
    difference basis of size at most |G:H| + |H|.  The subgroup comes
    from sampling elements and closing under powers (a flagged
    heuristic); groups with no proper subgroup fall back to greedy
    coverage.
    """
    table = ElementTable(group)
    n = len(table)
    if n == 1:
        return DifferenceBasis(1, [0], True, True, "transversal")
    rng = random.Random(seed)
    mul, inv = table.mul, table.inv
    best_h: Optional[list[int]] = None
    best_cost = n + 1
    seen_gens: set[int] = set()
    for _ in range(samples):
        g = rng.randrange(1, n)
        if g in seen_gens:
            continue
        seen_gens.add(g)
        # close <g> and every power under powers: each power generates a
        # cyclic subgroup worth costing
        cyc = [0]
        x = g
        while x != 0:
            cyc.append(x)
            x = mul(x, g)
        for d in range(1, len(cyc)):
            # subgroup generated by cyc[d] has order len(cyc)/gcd
            sub = [0]
            y = cyc[d]
            while y != 0:
                sub.append(y)
                y = mul(y, cyc[d])
            h = len(sub)
            if 1 < h < n:
                cost = n // h + h
                if cost < best_cost:
                    best_cost = cost
                    best_h = sorted(sub)
    if best_h is None:
        return DifferenceBasis(n, _greedy_basis(table), False, False, "greedy")
    hset = set(best_h)
    reps: list[int] = []
    covered = bytearray(n)
    for g in range(n):
        if not covered[g]:
            reps.append(g)
            for h in best_h:
                covered[mul(g, h)] = 1
    basis = sorted(set(reps) | hset)
    assert _covers_all(table, tuple(basis))
    return DifferenceBasis(n, basis, False, False, "transversal")


def singer_difference_set(q: int) -> DifferenceBasis:
    """A planar difference set of size q+1 in the cyclic group of order
    q^2+q+1, found by exhaustive search (supported q: 2, 3, 4)."""
    if q not in (2, 3, 4):
        raise ValueError("exhaustive planar search supports q in {2, 3, 4}")
    n = q * q + q + 1
    for rest in itertools.combinations(range(1, n), q):
        subset = (0,) + rest
        counts = [0] * n
        ok = True
        for a in subset:
            for b in subset:
                if a != b:
                    counts[(a - b) % n] += 1
        for c in counts[1:]:
            if c != 1:
                ok = False
                break
        if ok:
            return DifferenceBasis(n, list(subset), True, True, "exhaustive")
    raise AssertionError(f"no planar difference set found for q={q}")


@dataclass
class NestedActionReport:
    index: int
    m_small_stab: int     # m of the action with the smaller stabilizer H
    m_large_stab: int     # m of the action with the larger stabilizer K
    lower_ok: bool
    upper_ok: bool


def nested_action_check(group: PermGroup, small: PermGroup, large: PermGroup,
                        **m_options) -> NestedActionReport:
    """Verify the coset-action comparison for H <= K <= G.

    Computes m on both coset spaces and asserts
    m(G/H)/|K:H| <= m(G/K) <= m(G/H).
    """
    from .engine import compute_m

    if not small.is_subgroup(large) or not large.is_subgroup(group):
        raise ValueError("need subgroups H <= K <= G")
    index = large.order // small.order
    act_h, _, _ = group.coset_action(small)
    act_k, _, _ = group.coset_action(large)
    res_h = compute_m(act_h, **m_options)
    res_k = compute_m(act_k, **m_options) if act_k.degree >= 2 else None
    m_h = res_h.m
    m_k = res_k.m if res_k else 1
    lower_ok = m_h <= m_k * index
    upper_ok = m_k <= m_h
    assert lower_ok and upper_ok, (m_h, m_k, index)
    return NestedActionReport(index, m_h, m_k, lower_ok, upper_ok)
