"""The separability engine.

Decides whether a point set can be moved off itself by some group
element, computes the minimal size m(G) at which this first fails,
searches for random witnesses, and evaluates the element-counting and
order filters plus the exact averaging identity.

Point sets are bitmasks (Python ints); expensive loops work on raw
image tuples from the stabilizer chain.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

from .group import CapacityError, PermGroup, StabilizerChain
from .perm import Permutation

DEFAULT_ENUMERATION_LIMIT = 10**7
AUTO_BACKTRACK_THRESHOLD = 10**5


# -- point sets ----------------------------------------------------------


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def points_of(mask: int) -> list[int]:
    pts = []
    while mask:
        low = mask & -mask
        pts.append(low.bit_length() - 1)
        mask ^= low
    return pts


# -- results -------------------------------------------------------------


@dataclass
class SeparabilityResult:
    separable: bool
    witness: Optional[Permutation]
    strategy: str
    nodes_explored: int = 0

    @property
    def verdict(self) -> str:
        return "separable" if self.separable else "not_separable"


@dataclass
class MResult:
    m: Optional[int]
    minimal_witness: Optional[list[int]]
    lower_bound_used: int
    upper_bound: int
    sizes_exhausted: list[tuple[int, int]] = field(default_factory=list)
    exact: bool = True
    homogeneity_used: int = 1
    strategy: str = "auto"
    best_witness: Optional[list[int]] = None


@dataclass
class FilterReport:
    n: int
    order: int
    parity: str
    sum_value: int
    threshold: int
    passed: bool
    r_orbit_count: Optional[int] = None


@dataclass
class AverageIdentityReport:
    lhs: Fraction
    rhs: Fraction
    total: int
    equal: bool


@dataclass
class OrbitCountIdentityReport:
    n: int
    order: int
    r_orbit_count: int
    r_times_order: int
    sum_stabilizers: int
    sum_powers: int
    equal: bool


# -- separator searches ----------------------------------------------------


def _compose_raw(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(q[i] for i in p)


def _image_disjoint(g: Sequence[int], pts: Sequence[int], a_mask: int) -> bool:
    for p in pts:
        if (a_mask >> g[p]) & 1:
            return False
    return True


def _enumeration_separator(chain: StabilizerChain, a_mask: int,
                           pts: Sequence[int],
                           tables: Optional[list[tuple[int, ...]]] = None,
                           ) -> tuple[Optional[tuple[int, ...]], int]:
    tried = 0
    source = tables if tables is not None else chain.iter_images()
    for g in source:
        tried += 1
        if _image_disjoint(g, pts, a_mask):
            return g, tried
    return None, tried


def _backtrack_separator(chain: StabilizerChain, a_mask: int,
                         ) -> tuple[Optional[tuple[int, ...]], int]:
    """Deterministic DFS over the chain for g with A^g disjoint from A.

    Prunes a partial choice of base images as soon as any point of A
    with a determined image lands back in A.  Exact: exhausts the whole
    group when no separator exists.
    """
    n = chain.degree
    levels = chain.levels
    identity = tuple(range(n))
    if not levels:
        return (None, 1)
    fixed = chain.fixed_sets()
    for p in fixed[0]:
        if (a_mask >> p) & 1:
            # p is fixed by the whole group and stays inside A
            return None, 1
    newly: list[list[int]] = []
    for i in range(len(levels)):
        newly.append(sorted(
            p for p in (fixed[i + 1] - fixed[i]) if (a_mask >> p) & 1
        ))
    nodes = 0
    depth = len(levels)

    def rec(i: int, partial: tuple[int, ...]) -> Optional[tuple[int, ...]]:
        nonlocal nodes
        if i == depth:
            return partial
        level = levels[i]
        check = newly[i]
        for x in level.orbit:
            u = level.transversal[x]
            cand = tuple(partial[j] for j in u)
            nodes += 1
            ok = True
            for a in check:
                if (a_mask >> cand[a]) & 1:
                    ok = False
                    break
            if ok:
                found = rec(i + 1, cand)
                if found is not None:
                    return found
        return None

    result = rec(0, identity)
    return result, nodes


def is_self_separable(group: PermGroup, points: Iterable[int],
                      strategy: str = "auto",
                      enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
                      ) -> SeparabilityResult:
    """Exact separability verdict for a non-empty point set.

    Strategy "enumeration" scans every group element (order within the
    limit); "backtrack" runs the pruned chain search with a base that
    visits the set's points first, exact for any order.  Sets larger
    than half the domain are never separable, by counting.
    """
    a_mask = mask_of(points)
    pts = points_of(a_mask)
    n = group.degree
    if not pts:
        raise ValueError("separability needs a non-empty point set")
    if any(p >= n for p in pts):
        raise ValueError("point out of range")
    if not group.is_transitive():
        raise ValueError("separability verdicts require a transitive group")
    if 2 * len(pts) > n:
        return SeparabilityResult(False, None, "pigeonhole", 0)
    if strategy == "auto":
        strategy = ("enumeration" if group.order <= AUTO_BACKTRACK_THRESHOLD
                    else "backtrack")
    if strategy == "enumeration":
        if group.order > enumeration_limit:
            raise CapacityError(
                f"order {group.order} exceeds the enumeration limit; "
                "use strategy='backtrack'"
            )
        g, nodes = _enumeration_separator(group.chain(), a_mask, pts)
    elif strategy == "backtrack":
        chain = group.chain(base_hint=tuple(pts))
        g, nodes = _backtrack_separator(chain, a_mask)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if g is None:
        return SeparabilityResult(False, None, strategy, nodes)
    witness = Permutation(g)
    image = mask_of(witness(p) for p in pts)
    assert image & a_mask == 0, "witness failed re-verification"
    if 2 * len(pts) == n:
        # a separated half-set lands exactly on its complement
        assert image == ((1 << n) - 1) ^ a_mask
    return SeparabilityResult(True, witness, strategy, nodes)


# -- gosper iteration of fixed-size masks -----------------------------------


def iter_size_masks(width: int, size: int) -> Iterator[int]:
    """All `size`-bit masks within `width` bits, ascending numerically."""
    if size == 0:
        yield 0
        return
    if size > width:
        return
    v = (1 << size) - 1
    top = 1 << width
    while v < top:
        yield v
        c = v & -v
        r = v + c
        v = (((r ^ v) >> 2) // c) | r


# -- the m(G) search ---------------------------------------------------------


class _SeparatorCache:
    """Recently successful separators, tried first on the next candidate."""

    def __init__(self, size: int = 8):
        self.size = size
        self.entries: list[tuple[int, ...]] = []

    def find(self, a_mask: int, pts: Sequence[int]) -> Optional[tuple[int, ...]]:
        for g in self.entries:
            if _image_disjoint(g, pts, a_mask):
                return g
        return None

    def push(self, g: tuple[int, ...]) -> None:
        if g in self.entries:
            return
        self.entries.insert(0, g)
        del self.entries[self.size:]


def compute_m(group: PermGroup, strategy: str = "auto",
              budget_secs: Optional[float] = None,
              max_sets: Optional[int] = None,
              use_homogeneity: bool = True,
              homogeneity_cap: int = 20000,
              enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
              materialize_limit: int = 2 * 10**5,
              dedupe_elements: int = 0) -> MResult:
    """Minimal size of a set that no group element moves off itself.

    Ascends through candidate sizes from the exact stabilizer-average
    lower bound; candidates are normalized to contain {0..k-1} when the
    group is certified k-homogeneous, and enumerated in colex order by
    bit pattern (the reported minimal witness is the first one found in
    that order).  On budget exhaustion the result is marked inexact and
    reports the largest fully exhausted size.
    """
    from .bounds import neumann_lower, trivial_upper

    n = group.degree
    if n < 2:
        raise ValueError("m(G) needs a domain with at least 2 points")
    if not group.is_transitive():
        raise ValueError("m(G) is defined for transitive groups")
    order = group.order
    stab_order = order // n
    lo = max(neumann_lower(n, stab_order), 2)
    hi = trivial_upper(n)
    if strategy == "auto":
        strategy = ("enumeration" if order <= AUTO_BACKTRACK_THRESHOLD
                    else "backtrack")
    k_hom = 1
    if use_homogeneity:
        k_hom = max(1, group.certified_homogeneity(homogeneity_cap))

    tables: Optional[list[tuple[int, ...]]] = None
    if strategy == "enumeration":
        if order > enumeration_limit:
            raise CapacityError(
                f"order {order} exceeds the enumeration limit"
            )
        if order <= materialize_limit:
            tables = list(group.chain().iter_images())
    chain = group.chain()
    # candidates are colex-heavy in low points, so a sequential base
    # determines their images as early as possible during backtracking
    bt_chain = (group.chain(base_hint=tuple(range(n)))
                if strategy == "backtrack" else chain)
    dedupe_maps: list[tuple[int, ...]] = []
    if dedupe_elements:
        for i, g in enumerate(chain.iter_images()):
            if i >= dedupe_elements:
                break
            dedupe_maps.append(g)

    cache = _SeparatorCache()
    start = time.monotonic()
    tested_total = 0
    sizes_exhausted: list[tuple[int, int]] = []

    def out_of_budget() -> bool:
        if budget_secs is not None and time.monotonic() - start > budget_secs:
            return True
        if max_sets is not None and tested_total > max_sets:
            return True
        return False

    for size in range(lo, hi + 1):
        kp = min(size, k_hom)
        prefix = (1 << kp) - 1
        tested = 0
        for rest in iter_size_masks(n - kp, size - kp):
            a_mask = prefix | (rest << kp)
            if dedupe_maps and _dedupe_skip(a_mask, prefix, dedupe_maps):
                continue
            tested += 1
            tested_total += 1
            if tested_total % 512 == 0 and out_of_budget():
                return MResult(
                    m=None, minimal_witness=None, lower_bound_used=lo,
                    upper_bound=hi, sizes_exhausted=sizes_exhausted,
                    exact=False, homogeneity_used=k_hom, strategy=strategy,
                )
            pts = points_of(a_mask)
            if 2 * size > n:
                # counting makes the first candidate a witness
                return MResult(
                    m=size, minimal_witness=pts, lower_bound_used=lo,
                    upper_bound=hi, sizes_exhausted=sizes_exhausted,
                    exact=True, homogeneity_used=k_hom, strategy=strategy,
                )
            g = cache.find(a_mask, pts)
            if g is None:
                if strategy == "enumeration":
                    g, _ = _enumeration_separator(chain, a_mask, pts, tables)
                else:
                    g, _ = _backtrack_separator(bt_chain, a_mask)
            if g is None:
                return MResult(
                    m=size, minimal_witness=pts, lower_bound_used=lo,
                    upper_bound=hi, sizes_exhausted=sizes_exhausted,
                    exact=True, homogeneity_used=k_hom, strategy=strategy,
                )
            cache.push(g)
        sizes_exhausted.append((size, tested))
    raise AssertionError("size ceil((n+1)/2) must contain a witness")


def _dedupe_skip(a_mask: int, prefix: int, maps: Sequence[tuple[int, ...]]) -> bool:
    """Skip candidates with a smaller normalized image under the maps."""
    pts = points_of(a_mask)
    for g in maps:
        img = mask_of(g[p] for p in pts)
        if img & prefix == prefix and img < a_mask:
            return True
    return False


# -- randomized witness search ------------------------------------------------


def random_witness_search(group: PermGroup, size: int,
                          budget_secs: float = 60.0,
                          max_samples: Optional[int] = None,
                          seed: int = 0,
                          prepass: int = 128) -> Optional[tuple[list[int], SeparabilityResult]]:
    """Seeded random search for a non-separable set of the given size.

    Samples subsets uniformly, discards any that a quick random-element
    pass separates, and certifies the survivors with the exhaustive
    backtrack.  Returns the first verified witness; an empty result
    proves nothing.
    """
    import random as _random

    if not group.is_transitive():
        raise ValueError("witness search requires a transitive group")
    n = group.degree
    rng = _random.Random(seed)
    chain = group.chain()
    start = time.monotonic()
    samples = 0
    while time.monotonic() - start < budget_secs:
        if max_samples is not None and samples >= max_samples:
            break
        samples += 1
        pts = sorted(rng.sample(range(n), size))
        a_mask = mask_of(pts)
        if 2 * size <= n:
            found = False
            for _ in range(prepass):
                g = chain.random_images(rng)
                if _image_disjoint(g, pts, a_mask):
                    found = True
                    break
            if found:
                continue
        result = is_self_separable(group, pts, strategy="backtrack")
        if not result.separable:
            return pts, result
    return None


# -- element-counting filter and identities -----------------------------------


def _cycle_stats(images: Sequence[int]) -> tuple[int, int, int]:
    """(total cycles, odd cycles, shortest odd length or 0).

    Fixed points count as odd cycles of length 1.
    """
    n = len(images)
    seen = bytearray(n)
    total = odd = 0
    min_odd = 0
    for start in range(n):
        if seen[start]:
            continue
        length = 1
        seen[start] = 1
        j = images[start]
        while j != start:
            seen[j] = 1
            length += 1
            j = images[j]
        total += 1
        if length % 2:
            odd += 1
            if min_odd == 0 or length < min_odd:
                min_odd = length
    return total, odd, min_odd


def counting_filter(group: PermGroup, compute_r: bool = False,
                    enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
                    subset_limit: int = 2 * 10**5) -> FilterReport:
    """Necessary condition for m(G) to reach its ceiling.

    Even degree: binom(n, n/2) must not exceed the sum of 2^(cycles)
    over the elements with no odd cycle.  Odd degree: binom(n, (n-1)/2)
    against the sum of 2^(cycles-1) * (shortest odd length) over
    elements with exactly one odd cycle.  Failing the inequality proves
    m(G) < ceil((n+1)/2).
    """
    n = group.degree
    if group.order > enumeration_limit:
        raise CapacityError("order exceeds the enumeration limit")
    total = 0
    if n % 2 == 0:
        for g in group.chain().iter_images():
            c, odd, _ = _cycle_stats(g)
            if odd == 0:
                total += 1 << c
        threshold = comb(n, n // 2)
        parity = "even"
    else:
        for g in group.chain().iter_images():
            c, odd, min_odd = _cycle_stats(g)
            if odd == 1:
                total += (1 << (c - 1)) * min_odd
        threshold = comb(n, n // 2)
        parity = "odd"
    r = None
    if compute_r:
        labels = group.subset_orbit_labels(n // 2, subset_limit)
        r = len(set(labels.values()))
    return FilterReport(n, group.order, parity, total, threshold,
                        passed=total >= threshold, r_orbit_count=r)


def order_filter(n: int, order: int) -> tuple[bool, Fraction]:
    """Order threshold below which the ceiling value is impossible.

    Exact rational comparison; pass means the order is large enough to
    leave the ceiling open.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if n % 2 == 0:
        threshold = Fraction(comb(n, n // 2), 2 ** (n // 2))
    else:
        threshold = Fraction(comb(n, n // 2), (2 ** (n // 2)) * n)
    return order >= threshold, threshold


def neumann_average_check(group: PermGroup, a_points: Iterable[int],
                          b_points: Iterable[int],
                          enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
                          ) -> AverageIdentityReport:
    """Exact check of the averaging identity
    (1/|G|) sum_g |A n B^g| = |A||B|/n for a transitive group."""
    if not group.is_transitive():
        raise ValueError("the averaging identity needs a transitive group")
    if group.order > enumeration_limit:
        raise CapacityError("order exceeds the enumeration limit")
    a_mask = mask_of(a_points)
    b_pts = points_of(mask_of(b_points))
    total = 0
    for g in group.chain().iter_images():
        for p in b_pts:
            if (a_mask >> g[p]) & 1:
                total += 1
    lhs = Fraction(total, group.order)
    rhs = Fraction(bin(a_mask).count("1") * len(b_pts), group.degree)
    return AverageIdentityReport(lhs, rhs, total, lhs == rhs)


def disjoint_mapping_check(group: PermGroup, k: int,
                           subset_limit: int = 2 * 10**5) -> tuple[bool, bool]:
    """(premise, conclusion) of the disjoint-transporter implication.

    premise: every ordered pair of disjoint k-subsets is connected by a
    group element.  conclusion: single orbit on k-subsets.  For
    k <= ceil(n/2) - 1 the premise forces the conclusion; violations
    raise.
    """
    n = group.degree
    if k > (n + 1) // 2 - 1:
        raise ValueError("k must be at most ceil(n/2) - 1")
    labels = group.subset_orbit_labels(k, subset_limit)
    masks = list(labels)
    premise = True
    for i, m1 in enumerate(masks):
        for m2 in masks:
            if m1 & m2 == 0 and labels[m1] != labels[m2]:
                premise = False
                break
        if not premise:
            break
    conclusion = len(set(labels.values())) == 1
    if premise and not conclusion:
        raise AssertionError(
            "disjoint transporters exist but the action is not homogeneous"
        )
    return premise, conclusion


def orbit_count_identity_check(group: PermGroup, established_m: int,
                               enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
                               subset_limit: int = 2 * 10**5,
                               ) -> OrbitCountIdentityReport:
    """Exact identity r(G)|G| = sum |G_A| = sum 2^(cycles) over the
    odd-cycle-free elements, valid when m(G) meets the even-degree
    ceiling.

    Refuses unless the caller supplies an established m(G) equal to
    ceil((n+1)/2) for even n.
    """
    n = group.degree
    if n % 2:
        raise ValueError("the identity applies to even degree")
    if established_m != (n + 2) // 2:
        raise ValueError(
            "identity requires an established m(G) equal to the ceiling"
        )
    if group.order > enumeration_limit:
        raise CapacityError("order exceeds the enumeration limit")
    half = n // 2
    labels = group.subset_orbit_labels(half, subset_limit)
    r = len(set(labels.values()))
    elements = list(group.chain().iter_images())
    sum_stab = 0
    for m in labels:
        pts = points_of(m)
        for g in elements:
            img = 0
            for p in pts:
                img |= 1 << g[p]
            if img == m:
                sum_stab += 1
    sum_pow = 0
    for g in elements:
        c, odd, _ = _cycle_stats(g)
        if odd == 0:
            sum_pow += 1 << c
    r_times = r * group.order
    equal = r_times == sum_stab == sum_pow
    assert equal, (r_times, sum_stab, sum_pow)
    return OrbitCountIdentityReport(n, group.order, r, r_times,
                                    sum_stab, sum_pow, equal)
