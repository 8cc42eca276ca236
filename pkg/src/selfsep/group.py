"""Permutation groups with a deterministic base-and-strong-generator chain.

The chain is built by the classic deterministic Schreier-Sims procedure
with breadth-first Schreier trees, so orders, membership tests, element
iteration and transversals are reproducible across runs.  Hot paths work
on raw image tuples; :class:`~selfsep.perm.Permutation` wraps the API
surface.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .perm import Permutation

DEFAULT_ITERATION_LIMIT = 10**7


class CapacityError(RuntimeError):
    """A configured size or order limit would be exceeded."""


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    # apply p first, then q
    return tuple(q[i] for i in p)


def _inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


@dataclass
class _Level:
    point: int
    gens: list[tuple[int, ...]] = field(default_factory=list)
    transversal: dict[int, tuple[int, ...]] = field(default_factory=dict)
    orbit: list[int] = field(default_factory=list)


class StabilizerChain:
    """Base points with transversals of successive point stabilizers."""

    def __init__(self, degree: int, gens: list[tuple[int, ...]],
                 base_hint: Sequence[int] = ()):
        self.degree = degree
        self.levels: list[_Level] = []
        self._identity = tuple(range(degree))
        self._base_hint = list(base_hint)
        self._all_gens: Optional[list[tuple[int, ...]]] = None
        self._build(gens)

    # -- construction -------------------------------------------------

    def _next_base_point(self, g: tuple[int, ...]) -> int:
        for b in self._base_hint:
            if g[b] != b:
                return b
        for b in range(self.degree):
            if g[b] != b:
                return b
        raise AssertionError("identity passed as a new strong generator")

    def _rebuild_transversal(self, i: int) -> None:
        level = self.levels[i]
        trans = {level.point: self._identity}
        queue = [level.point]
        while queue:
            x = queue.pop(0)
            ux = trans[x]
            for g in level.gens:
                y = g[x]
                if y not in trans:
                    trans[y] = _compose(ux, g)
                    queue.append(y)
        level.transversal = trans
        # base point first so the identity leads element iteration
        level.orbit = [level.point] + sorted(x for x in trans if x != level.point)

    def _strip(self, g: tuple[int, ...], start: int) -> tuple[tuple[int, ...], int]:
        for i in range(start, len(self.levels)):
            level = self.levels[i]
            x = g[level.point]
            if x not in level.transversal:
                return g, i
            g = _compose(g, _inverse(level.transversal[x]))
        return g, len(self.levels)

    def _build(self, gens: list[tuple[int, ...]]) -> None:
        gens = [g for g in gens if g != self._identity]
        if not gens:
            self._all_gens = []
            return
        # hinted points become base points up front, in hint order, so the
        # backtrack search determines their images as early as possible
        for b in self._base_hint:
            self.levels.append(_Level(b))
            self._rebuild_transversal(len(self.levels) - 1)
        # distribute generators to the deepest level whose base prefix they fix
        for g in gens:
            self._insert_gen(g, 0)
        i = len(self.levels) - 1
        while i >= 0:
            if self._check_level(i):
                i -= 1
            else:
                i = len(self.levels) - 1
        # consolidate the strong generators, then drop levels whose base
        # point the level group fixes (their transversal is a singleton,
        # so they contribute nothing to factorization or order)
        self._all_gens = []
        for lev in self.levels:
            for g in lev.gens:
                if g not in self._all_gens:
                    self._all_gens.append(g)
        self.levels = [lev for lev in self.levels
                       if len(lev.transversal) > 1]

    def _insert_gen(self, g: tuple[int, ...], level_from: int) -> None:
        i = level_from
        while i < len(self.levels) and g[self.levels[i].point] == self.levels[i].point:
            i += 1
        if i == len(self.levels):
            self.levels.append(_Level(self._next_base_point(g)))
        # g fixes base[:i], so it belongs to the level-i subgroup
        self.levels[i].gens.append(g)
        self._rebuild_transversal(i)

    def _check_level(self, i: int) -> bool:
        """Sift all Schreier generators of level i; True when complete."""
        level = self.levels[i]
        self._rebuild_transversal(i)
        strong = self._strong_gens(i)
        if level.gens != strong:
            level.gens = strong
            self._rebuild_transversal(i)
        for x in level.orbit:
            ux = level.transversal[x]
            for g in level.gens:
                schreier = _compose(
                    _compose(ux, g), _inverse(level.transversal[g[x]])
                )
                residue, depth = self._strip(schreier, i + 1)
                if residue != self._identity:
                    self._insert_gen(residue, i + 1)
                    return False
        return True

    def _strong_gens(self, i: int) -> list[tuple[int, ...]]:
        """All strong generators fixing base[:i] (generate level i's group)."""
        base_prefix = [lev.point for lev in self.levels[:i]]
        pool = getattr(self, "_all_gens", None)
        if pool is None:
            pool = []
            for lev in self.levels:
                for g in lev.gens:
                    if g not in pool:
                        pool.append(g)
        out = []
        for g in pool:
            if all(g[b] == b for b in base_prefix) and g not in out:
                out.append(g)
        return out

    # -- queries -------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lev.point for lev in self.levels]

    def order(self) -> int:
        n = 1
        for lev in self.levels:
            n *= len(lev.transversal)
        return n

    def contains(self, images: Sequence[int]) -> bool:
        residue, _ = self._strip(tuple(images), 0)
        return residue == self._identity

    def iter_images(self) -> Iterator[tuple[int, ...]]:
        """Yield every element exactly once, identity first.

        The innermost (level 0) transversal varies fastest, so consecutive
        elements move the first base point through its whole orbit.
        """
        def rec(i: int) -> Iterator[tuple[int, ...]]:
            if i == len(self.levels):
                yield self._identity
                return
            level = self.levels[i]
            for h in rec(i + 1):
                for x in level.orbit:
                    yield _compose(h, level.transversal[x])

        yield from rec(0)

    def random_images(self, rng) -> tuple[int, ...]:
        g = self._identity
        for lev in self.levels:
            x = lev.orbit[rng.randrange(len(lev.orbit))]
            g = _compose(g, lev.transversal[x])
        return g

    def stabilizer_gens(self, point: int) -> list[tuple[int, ...]]:
        """Strong generators of the stabilizer of the first base point.

        Only valid when ``point`` is the first base point of this chain.
        """
        if not self.levels or self.levels[0].point != point:
            raise ValueError("chain base does not start at the requested point")
        return self._strong_gens(1)

    def fixed_sets(self) -> list[set[int]]:
        """fixed_sets()[i] = points fixed by the level-i subgroup.

        Index len(levels) is the full domain (trivial subgroup).
        """
        out = []
        for i in range(len(self.levels) + 1):
            gens = self._strong_gens(i)
            fixed = {
                x for x in range(self.degree) if all(g[x] == x for g in gens)
            }
            out.append(fixed)
        return out


class PermGroup:
    """A permutation group given by generators, with a lazily built chain."""

    def __init__(self, generators: Iterable[Permutation],
                 degree: Optional[int] = None):
        gens = list(generators)
        if not gens:
            if degree is None:
                raise ValueError("need generators or an explicit degree")
            gens = [Permutation.identity(degree)]
        self.degree = degree if degree is not None else gens[0].degree
        for g in gens:
            if g.degree != self.degree:
                raise ValueError(
                    f"generator degree {g.degree} != group degree {self.degree}"
                )
        self.generators = gens
        self._chain: Optional[StabilizerChain] = None
        self._hinted_chains: dict[tuple[int, ...], StabilizerChain] = {}
        self._order: Optional[int] = None

    @classmethod
    def from_cycles(cls, degree: int, cycle_lists: Sequence[Sequence[Sequence[int]]]) -> "PermGroup":
        return cls([Permutation.from_cycles(degree, cs) for cs in cycle_lists],
                   degree)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls([Permutation.identity(degree)], degree)

    def gen_images(self) -> list[tuple[int, ...]]:
        return [g.images for g in self.generators]

    # -- chain ----------------------------------------------------------

    def chain(self, base_hint: Sequence[int] = ()) -> StabilizerChain:
        """The stabilizer chain; rebuilt (and cached) per base hint."""
        hint = tuple(base_hint)
        if not hint:
            if self._chain is None:
                self._chain = StabilizerChain(self.degree, self.gen_images())
            return self._chain
        if hint not in self._hinted_chains:
            self._hinted_chains[hint] = StabilizerChain(
                self.degree, self.gen_images(), hint
            )
            if len(self._hinted_chains) > 16:
                self._hinted_chains.pop(next(iter(self._hinted_chains)))
        return self._hinted_chains[hint]

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = self.chain().order()
        return self._order

    def __contains__(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        return self.chain().contains(perm.images)

    def is_subgroup(self, other: "PermGroup") -> bool:
        """True when self <= other (same degree, generators contained)."""
        return self.degree == other.degree and all(
            g in other for g in self.generators
        )

    # -- orbits and transitivity ----------------------------------------

    def orbit_of(self, x: int) -> set[int]:
        if not 0 <= x < self.degree:
            raise ValueError(f"point {x} out of range for degree {self.degree}")
        orbit = {x}
        queue = [x]
        gens = self.gen_images()
        while queue:
            a = queue.pop()
            for g in gens:
                b = g[a]
                if b not in orbit:
                    orbit.add(b)
                    queue.append(b)
        return orbit

    def orbits(self) -> list[set[int]]:
        seen: set[int] = set()
        out = []
        for x in range(self.degree):
            if x not in seen:
                orb = self.orbit_of(x)
                seen |= orb
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit_of(0)) == self.degree

    # -- element iteration ------------------------------------------------

    def iter_elements(self, limit: int = DEFAULT_ITERATION_LIMIT) -> Iterator[Permutation]:
        """Every element exactly once, in deterministic chain order."""
        if self.order > limit:
            raise CapacityError(
                f"order {self.order} exceeds iteration limit {limit}; "
                "use the backtrack strategy instead"
            )
        for images in self.chain().iter_images():
            yield Permutation(images)

    def random_element(self, rng) -> Permutation:
        return Permutation(self.chain().random_images(rng))

    # -- stabilizers and actions ------------------------------------------

    def point_stabilizer(self, x: int) -> "PermGroup":
        if not 0 <= x < self.degree:
            raise ValueError(f"point {x} out of range")
        chain = self.chain(base_hint=(x,))
        if not chain.levels:
            return PermGroup.trivial(self.degree)
        if chain.levels[0].point != x:
            # x fixed by the whole group
            return PermGroup(self.generators, self.degree)
        gens = [Permutation(g) for g in chain.stabilizer_gens(x)]
        if not gens:
            return PermGroup.trivial(self.degree)
        return PermGroup(gens, self.degree)

    def block_systems(self) -> list["BlockSystem"]:
        """All minimal non-trivial block systems; empty iff primitive.

        Uses the pair-closure refinement over the pairs (0, x).
        """
        if not self.is_transitive():
            raise ValueError("block systems are defined for transitive groups")
        n = self.degree
        gens = self.gen_images()
        systems: dict[tuple[int, ...], BlockSystem] = {}
        for x in range(1, n):
            assignment = _pair_closure(n, gens, 0, x)
            block_count = len(set(assignment))
            if block_count in (1, n):
                continue
            key = tuple(assignment)
            if key not in systems:
                systems[key] = BlockSystem.from_assignment(assignment)
        # keep only minimal systems: block of 0 minimal under inclusion
        out = []
        for sys_a in systems.values():
            block0_a = sys_a.block_of(0)
            if not any(
                sys_b.block_of(0) < block0_a for sys_b in systems.values()
            ):
                out.append(sys_a)
        out.sort(key=lambda s: (s.block_size, s.assignment))
        return out

    def block_quotient(self, system: "BlockSystem") -> "PermGroup":
        """The induced action on the blocks of a G-invariant system."""
        reps = {}
        for p, b in enumerate(system.assignment):
            reps.setdefault(b, p)
        gens = []
        for g in self.gen_images():
            images = [0] * system.block_count
            for b, p in reps.items():
                images[b] = system.assignment[g[p]]
            gens.append(Permutation(images))
        return PermGroup(gens, system.block_count)

    def coset_action(self, subgroup: "PermGroup") -> tuple["PermGroup", list[Permutation], int]:
        """Action of self on the right cosets of ``subgroup``.

        Returns (action, coset representatives, kernel order).  Raises if
        ``subgroup`` is not contained in self.
        """
        if not subgroup.is_subgroup(self):
            raise ValueError("coset action requires a subgroup of the group")
        index, rem = divmod(self.order, subgroup.order)
        if rem:
            raise AssertionError("subgroup order does not divide group order")
        sub_chain = subgroup.chain()
        reps: list[tuple[int, ...]] = [tuple(range(self.degree))]
        gens = self.gen_images()

        def coset_index(g: tuple[int, ...]) -> int | None:
            for i, r in enumerate(reps):
                if sub_chain.contains(_compose(g, _inverse(r))):
                    return i
            return None

        tables: list[list[int]] = [[] for _ in gens]
        i = 0
        while i < len(reps):
            for gi, g in enumerate(gens):
                prod = _compose(reps[i], g)
                j = coset_index(prod)
                if j is None:
                    reps.append(prod)
                    j = len(reps) - 1
                tables[gi].append(j)
            i += 1
        if len(reps) != index:
            raise AssertionError("coset enumeration did not match the index")
        action = PermGroup(
            [Permutation(t) for t in tables], len(reps)
        )
        kernel_order = self.order // action.order
        return action, [Permutation(r) for r in reps], kernel_order

    # -- subset orbits ---------------------------------------------------

    def subset_orbit_labels(self, k: int, limit: int = 2 * 10**5) -> dict[int, int]:
        """Map each k-subset bitmask to an orbit label (0-based)."""
        from math import comb

        n = self.degree
        if comb(n, k) > limit:
            raise CapacityError(
                f"binom({n},{k}) = {comb(n, k)} exceeds the subset limit {limit}"
            )
        gens = self.gen_images()
        masks = []
        for combo in itertools.combinations(range(n), k):
            m = 0
            for p in combo:
                m |= 1 << p
            masks.append(m)
        labels: dict[int, int] = {}
        next_label = 0
        for m in masks:
            if m in labels:
                continue
            labels[m] = next_label
            queue = [m]
            while queue:
                cur = queue.pop()
                pts = _mask_points(cur)
                for g in gens:
                    img = 0
                    for p in pts:
                        img |= 1 << g[p]
                    if img not in labels:
                        labels[img] = next_label
                        queue.append(img)
            next_label += 1
        return labels

    def homogeneity_degree(self, k_max: int, limit: int = 2 * 10**5) -> dict[int, int]:
        """Orbit counts on k-subsets for each 1 <= k <= k_max.

        The group is k-homogeneous exactly when the count is 1.
        """
        if k_max > self.degree // 2:
            raise ValueError("k_max must not exceed degree/2")
        out = {}
        for k in range(1, k_max + 1):
            labels = self.subset_orbit_labels(k, limit)
            out[k] = len(set(labels.values()))
        return out

    def certified_homogeneity(self, cap: int = 20000) -> int:
        """Largest k with a single orbit on j-subsets for all j <= k.

        Stops at the first failure or when binom(n, k) exceeds ``cap``;
        at least 1 for transitive groups.
        """
        from math import comb

        n = self.degree
        k = 0
        for j in range(1, n // 2 + 1):
            if comb(n, j) > cap:
                break
            labels = self.subset_orbit_labels(j, cap)
            if len(set(labels.values())) != 1:
                break
            k = j
        return k

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


@dataclass(frozen=True)
class BlockSystem:
    """A G-invariant partition into ``block_count`` blocks of ``block_size``."""

    block_size: int
    block_count: int
    assignment: tuple[int, ...]

    @classmethod
    def from_assignment(cls, assignment: Sequence[int]) -> "BlockSystem":
        relabel: dict[int, int] = {}
        normal = []
        for a in assignment:
            if a not in relabel:
                relabel[a] = len(relabel)
            normal.append(relabel[a])
        count = len(relabel)
        size, rem = divmod(len(assignment), count)
        if rem:
            raise ValueError("blocks do not partition the domain evenly")
        return cls(size, count, tuple(normal))

    def block_of(self, point: int) -> frozenset[int]:
        b = self.assignment[point]
        return frozenset(
            p for p, a in enumerate(self.assignment) if a == b
        )

    def is_invariant_under(self, group: PermGroup) -> bool:
        for g in group.gen_images():
            image_block: dict[int, int] = {}
            for p in range(len(self.assignment)):
                src = self.assignment[p]
                dst = self.assignment[g[p]]
                if image_block.setdefault(src, dst) != dst:
                    return False
        return True


class ElementTable:
    """A finite group as an indexed element list with multiplication.

    Element 0 is the identity.  Supports the regular action and the
    difference-basis searches.
    """

    def __init__(self, group: PermGroup, limit: int = 10**5):
        if group.order > limit:
            raise CapacityError(
                f"order {group.order} exceeds the element-table limit {limit}"
            )
        self.group = group
        self.elements: list[tuple[int, ...]] = list(group.chain().iter_images())
        self.index: dict[tuple[int, ...], int] = {
            e: i for i, e in enumerate(self.elements)
        }
        assert self.elements[0] == tuple(range(group.degree))
        self._inv = [self.index[_inverse(e)] for e in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.index[_compose(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def right_regular_permutation(self, j: int) -> Permutation:
        """The permutation of element indices given by x -> x * e_j."""
        e_j = self.elements[j]
        return Permutation(
            self.index[_compose(e, e_j)] for e in self.elements
        )


def _mask_points(mask: int) -> list[int]:
    pts = []
    while mask:
        low = mask & -mask
        pts.append(low.bit_length() - 1)
        mask ^= low
    return pts


def _pair_closure(n: int, gens: list[tuple[int, ...]], a: int, b: int) -> list[int]:
    """Finest G-invariant partition with a and b in the same class."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> bool:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    queue = [(a, b)]
    union(a, b)
    while queue:
        x, y = queue.pop()
        for g in gens:
            if union(g[x], g[y]):
                queue.append((g[x], g[y]))
    roots = [find(x) for x in range(n)]
    return roots
