"""Constructors for the concrete actions the computations run on.

Named families, affine and classical matrix groups on subspace domains,
wreath products in both actions, actions on k-subsets, regular actions,
and the layered symmetries of the diagonal domain T^(k-1).

Every constructor returns a transitive permutation group together with a
LabeledDomain; matrix-group generator sets are verified against the
classical order formulas on their faithful vector action.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, prod
from typing import Callable, Optional, Sequence

from .domains import LabeledDomain
from .gf import GF, gf
from .group import BlockSystem, CapacityError, ElementTable, PermGroup
from .linalg import (
    FormedSpace,
    Matrix,
    enumerate_subspaces,
    identity_matrix,
    index_vector,
    mat_mul,
    rref,
    standard_alternating,
    standard_hermitian,
    standard_quadratic,
    unit_vector,
    vec_mat,
    vector_index,
)
from .perm import Permutation

DEFAULT_DOMAIN_LIMIT = 200_000


@dataclass
class GroupAction:
    """A constructed permutation action with its labels and metadata."""

    group: PermGroup
    domain: LabeledDomain
    name: str
    blocks: Optional[BlockSystem] = None
    formed_space: Optional[FormedSpace] = None
    kernel_order: int = 1

    @property
    def degree(self) -> int:
        return self.group.degree


def _check_transitive(action: GroupAction) -> GroupAction:
    if action.degree >= 1 and not action.group.is_transitive():
        raise ValueError(f"constructed action {action.name} is not transitive")
    return action


# -- named families ------------------------------------------------------


def symmetric(n: int) -> GroupAction:
    if n < 2:
        raise ValueError("symmetric groups need n >= 2")
    gens = [Permutation.from_cycles(n, [[0, 1]])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [list(range(n))]))
    return _check_transitive(GroupAction(
        PermGroup(gens, n), LabeledDomain.points(n), f"sym:{n}"
    ))


def alternating(n: int) -> GroupAction:
    if n < 3:
        raise ValueError("alternating groups need n >= 3 to act transitively")
    gens = [Permutation.from_cycles(n, [[0, 1, 2]])]
    if n > 3:
        if n % 2:
            gens.append(Permutation.from_cycles(n, [list(range(n))]))
        else:
            gens.append(Permutation.from_cycles(n, [list(range(1, n))]))
    g = PermGroup(gens, n)
    assert g.order * 2 == prod(range(1, n + 1))
    return _check_transitive(GroupAction(g, LabeledDomain.points(n), f"alt:{n}"))


def cyclic(n: int) -> GroupAction:
    if n < 2:
        raise ValueError("cyclic groups need n >= 2")
    g = PermGroup.from_cycles(n, [[list(range(n))]])
    return _check_transitive(GroupAction(g, LabeledDomain.points(n), f"cyclic:{n}"))


def dihedral(n: int) -> GroupAction:
    """Dih(n) of order 2n acting on the n vertices of an n-gon."""
    if n < 3:
        raise ValueError("dihedral groups need n >= 3")
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(n - i) % n for i in range(n)])
    g = PermGroup([rot, ref], n)
    assert g.order == 2 * n
    return _check_transitive(GroupAction(g, LabeledDomain.points(n), f"dihedral:{n}"))


_M11_CYCLES = [
    [[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]],
    [[2, 6, 10, 7], [3, 9, 4, 5]],
]
_M12_CYCLES = _M11_CYCLES + [
    [[0, 11], [1, 10], [2, 5], [3, 7], [4, 8], [6, 9]],
]


def mathieu(n: int) -> GroupAction:
    if n == 11:
        g = PermGroup.from_cycles(11, _M11_CYCLES)
        assert g.order == 7920, f"M11 generators broken: order {g.order}"
    elif n == 12:
        g = PermGroup.from_cycles(12, _M12_CYCLES)
        assert g.order == 95040, f"M12 generators broken: order {g.order}"
    else:
        raise ValueError("only the Mathieu groups M11 and M12 are available")
    return _check_transitive(GroupAction(g, LabeledDomain.points(n), f"mathieu:{n}"))


# -- affine actions --------------------------------------------------------


def affine1(q: int, semilinear: bool = False) -> GroupAction:
    """AGL(1,q) of order q(q-1), or AGammaL(1,q) of order q(q-1)e."""
    F = gf(q)
    pts = list(range(q))
    gens = [
        Permutation(F.add[x][1] for x in pts),
        Permutation(F.mul[x][F.generator] for x in pts),
    ]
    name = f"agammal1:{q}" if semilinear else f"agl1:{q}"
    if semilinear:
        gens.append(Permutation(F.frobenius(x) for x in pts))
    g = PermGroup(gens, q)
    expected = q * (q - 1) * (F.e if semilinear else 1)
    assert g.order == expected, (g.order, expected)
    dom = LabeledDomain("point", pts, f"GF({q})")
    return _check_transitive(GroupAction(g, dom, name))


def affine(d: int, q: int) -> GroupAction:
    """AGL(d,q) acting on the q^d vectors."""
    F = gf(q)
    n = q ** d
    translations = []
    for i in range(d):
        e = unit_vector(d, i)
        translations.append(Permutation(
            vector_index(F, tuple(F.add[a][b] for a, b in
                                  zip(index_vector(F, d, x), e)))
            for x in range(n)
        ))
    mats = _gl_generators(F, d)
    linear = [
        Permutation(
            vector_index(F, vec_mat(F, index_vector(F, d, x), M))
            for x in range(n)
        )
        for M in mats
    ]
    g = PermGroup(translations + linear, n)
    expected = n * _gl_order(d, q)
    assert g.order == expected, (g.order, expected)
    dom = LabeledDomain("tuple", [index_vector(F, d, x) for x in range(n)],
                        f"GF({q})^{d}")
    return _check_transitive(GroupAction(g, dom, f"agl:{d},{q}"))


# -- matrix groups ---------------------------------------------------------


def _gl_order(d: int, q: int) -> int:
    return prod(q ** d - q ** i for i in range(d))


def _sl_order(d: int, q: int) -> int:
    return _gl_order(d, q) // (q - 1)


def _sp_order(m: int, q: int) -> int:
    return q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))


def _gu_order(d: int, q: int) -> int:
    return q ** (d * (d - 1) // 2) * prod(
        q ** i - (-1) ** i for i in range(1, d + 1)
    )


def _go_order(epsilon: str, d: int, q: int) -> int:
    if epsilon == "o":
        m = (d - 1) // 2
        return 2 * q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))
    m = d // 2
    sign = 1 if epsilon == "+" else -1
    return (2 * q ** (m * (m - 1)) * (q ** m - sign)
            * prod(q ** (2 * i) - 1 for i in range(1, m - 1 + 1)))


def _elementary(F: GF, d: int, i: int, j: int, c: int) -> Matrix:
    rows = [list(unit_vector(d, r)) for r in range(d)]
    rows[i][j] = c
    return tuple(tuple(r) for r in rows)


def _signed_shift(F: GF, d: int) -> Matrix:
    rows = [[0] * d for _ in range(d)]
    for i in range(d - 1):
        rows[i][i + 1] = 1
    rows[d - 1][0] = F.pow(F.neg[1], d - 1)
    return tuple(tuple(r) for r in rows)


def _sl_generators(F: GF, d: int) -> list[Matrix]:
    gens = [_elementary(F, d, 0, 1, F.exp[j]) for j in range(F.e)]
    gens.append(_signed_shift(F, d))
    return gens


def _gl_generators(F: GF, d: int) -> list[Matrix]:
    gens = _sl_generators(F, d)
    diag = [list(unit_vector(d, r)) for r in range(d)]
    diag[0][0] = F.generator
    gens.append(tuple(tuple(r) for r in diag))
    return gens


def _vector_permutation(F: GF, d: int, M: Matrix) -> Permutation:
    n = F.q ** d
    return Permutation(
        vector_index(F, vec_mat(F, index_vector(F, d, x), M))
        for x in range(n)
    )


def _matrix_group_order(F: GF, d: int, mats: Sequence[Matrix]) -> int:
    """Order of <mats> via the faithful action on all q^d vectors."""
    return PermGroup([_vector_permutation(F, d, M) for M in mats],
                     F.q ** d).order


class _GrowingMatrixGroup:
    """Accumulates matrix generators, skipping redundant candidates.

    Membership is tested on the faithful vector action, so the kept
    generating set stays small (each kept matrix strictly enlarges the
    group).
    """

    def __init__(self, F: GF, d: int):
        self.F, self.d = F, d
        self.mats: list[Matrix] = []
        self._group: Optional[PermGroup] = None

    @property
    def order(self) -> int:
        return self._group.order if self._group else 1

    def add_if_new(self, M: Matrix) -> bool:
        perm = _vector_permutation(self.F, self.d, M)
        if self._group is not None and perm in self._group:
            return False
        self.mats.append(M)
        gens = [_vector_permutation(self.F, self.d, m) for m in self.mats]
        self._group = PermGroup(gens, self.F.q ** self.d)
        return True


def _symplectic_transvection(F: GF, space: FormedSpace, v, lam: int) -> Matrix:
    d = space.dimension
    rows = []
    for i in range(d):
        e = unit_vector(d, i)
        coeff = F.mul[lam][space.bilinear(e, v)]
        rows.append(tuple(
            F.add[a][F.mul[coeff][b]] for a, b in zip(e, v)
        ))
    return tuple(rows)


def _sp_generators(F: GF, d: int) -> tuple[list[Matrix], FormedSpace]:
    """Symplectic transvections added in canonical order until the order
    formula is met."""
    space = standard_alternating(F, d)
    target = _sp_order(d // 2, F.q)
    grow = _GrowingMatrixGroup(F, d)
    for x in range(1, F.q ** d):
        v = index_vector(F, d, x)
        for j in range(F.e):
            T = _symplectic_transvection(F, space, v, F.exp[j])
            grow.add_if_new(T)
            if grow.order == target:
                return grow.mats, space
    raise AssertionError(f"symplectic generators not found for d={d}, q={F.q}")


def _reflection(F: GF, space: FormedSpace, v) -> Matrix:
    qv = space.quadratic(v)
    inv_qv = F.inv[qv]
    d = space.dimension
    rows = []
    for i in range(d):
        e = unit_vector(d, i)
        coeff = F.mul[space.bilinear(e, v)][inv_qv]
        rows.append(tuple(
            F.sub(a, F.mul[coeff][b]) for a, b in zip(e, v)
        ))
    return tuple(rows)


def _frame_isometries(F: GF, space: FormedSpace, target: int) -> list[Matrix]:
    """Generators of the full isometry group by image-of-basis search.

    Enumerates images of the standard basis subject to the form
    constraints, adding each completed isometry as a generator until the
    target order is reached.  Deterministic and independent of any
    generation theory; practical for small q^d only.
    """
    d = space.dimension
    basis = [unit_vector(d, i) for i in range(d)]
    vectors = [index_vector(F, d, x) for x in range(1, F.q ** d)]
    want_b = [[space.bilinear(basis[i], basis[j]) for j in range(d)]
              for i in range(d)]
    want_q = ([space.quadratic(e) for e in basis]
              if space.kind == "quadratic" else None)
    grow = _GrowingMatrixGroup(F, d)
    done = False

    def extend(rows: list) -> None:
        nonlocal done
        if done:
            return
        i = len(rows)
        if i == d:
            grow.add_if_new(tuple(rows))
            if grow.order == target:
                done = True
            return
        for v in vectors:
            if want_q is not None and space.quadratic(v) != want_q[i]:
                continue
            if space.kind == "hermitian" and space.bilinear(v, v) != want_b[i][i]:
                continue
            ok = True
            for j in range(i):
                if space.bilinear(rows[j], v) != want_b[j][i] or \
                   space.bilinear(v, rows[j]) != want_b[i][j]:
                    ok = False
                    break
            if ok:
                rows.append(v)
                extend(rows)
                rows.pop()
                if done:
                    return

    extend([])
    if grow.order != target:
        raise AssertionError(
            f"isometry search reached order {grow.order}, wanted {target}"
        )
    return grow.mats


def _gu_generators(F2: GF, d: int, q: int) -> tuple[list[Matrix], FormedSpace]:
    space = standard_hermitian(F2, d)
    target = _gu_order(d, q)
    return _frame_isometries(F2, space, target), space


def _go_generators(F: GF, d: int, epsilon: str) -> tuple[list[Matrix], FormedSpace]:
    space = standard_quadratic(F, d, epsilon)
    target = _go_order(epsilon, d, F.q)
    if F.p == 2:
        return _frame_isometries(F, space, target), space
    # odd characteristic: reflections generate the orthogonal group
    grow = _GrowingMatrixGroup(F, d)
    for x in range(1, F.q ** d):
        v = index_vector(F, d, x)
        if space.quadratic(v) == 0:
            continue
        grow.add_if_new(_reflection(F, space, v))
        if grow.order == target:
            return grow.mats, space
    raise AssertionError(f"reflection generators did not reach order {target}")


_MATRIX_CACHE: dict[tuple, tuple[list[Matrix], Optional[FormedSpace], int]] = {}


def matrix_group(family: str, d: int, q: int) -> tuple[list[Matrix], Optional[FormedSpace], GF]:
    """Generator matrices, the invariant form (if any), and the field.

    family: gl, sl, sp, gu, go+, go-, goo.  Unitary groups use the
    GF(q^2) table.  The generating sets are order-verified on the vector
    action.
    """
    key = (family, d, q)
    if key not in _MATRIX_CACHE:
        if family == "gl":
            F = gf(q)
            mats = _gl_generators(F, d)
            assert _matrix_group_order(F, d, mats) == _gl_order(d, q)
            entry = (mats, None, F.q)
        elif family == "sl":
            F = gf(q)
            mats = _sl_generators(F, d)
            assert _matrix_group_order(F, d, mats) == _sl_order(d, q)
            entry = (mats, None, F.q)
        elif family == "sp":
            if d % 2:
                raise ValueError("symplectic groups need even dimension")
            F = gf(q)
            mats, space = _sp_generators(F, d)
            entry = (mats, space, F.q)
        elif family == "gu":
            F = gf(q * q)
            mats, space = _gu_generators(F, d, q)
            entry = (mats, space, F.q)
        elif family in ("go+", "go-", "goo"):
            eps = {"go+": "+", "go-": "-", "goo": "o"}[family]
            F = gf(q)
            mats, space = _go_generators(F, d, eps)
            entry = (mats, space, F.q)
        else:
            raise ValueError(f"unknown matrix family {family!r}")
        _MATRIX_CACHE[key] = entry
    mats, space, fq = _MATRIX_CACHE[key]
    return mats, space, gf(fq)


def classify_subspace(space: Optional[FormedSpace], sub: Matrix) -> str:
    """Classifier exposed with the classical actions.

    Returns "isotropic" (totally isotropic or totally singular),
    "hyperbolic"/"parabolic"/"elliptic" for nondegenerate restrictions
    of quadratic forms, "nondegenerate" for other nondegenerate
    restrictions, and "degenerate" otherwise.
    """
    if space is None:
        return "generic"
    if space.is_totally_isotropic(sub):
        return "isotropic"
    if not space.is_nondegenerate_on(sub):
        return "degenerate"
    if space.kind == "quadratic":
        t = space.restricted_type(sub)
        return t if t is not None else "degenerate"
    return "nondegenerate"


def classical_action(family: str, d: int, q: int, domain_kind: str,
                     k: int = 1, subtype: Optional[str] = None,
                     limit: int = DEFAULT_DOMAIN_LIMIT,
                     semilinear: bool = False,
                     projective: Optional[str] = None) -> GroupAction:
    """A classical matrix group acting on a subspace domain.

    domain_kind: "grass" (all k-subspaces), "isotropic" (totally
    isotropic/singular k-subspaces), "nondeg" (nondegenerate, optionally
    restricted to a Witt subtype for orthogonal families).
    """
    mats, space, F = matrix_group(family, d, q)
    if F.q ** d > 4 * limit:
        raise CapacityError(f"vector space GF({F.q})^{d} too large")
    everything = enumerate_subspaces(F, d, k)
    if domain_kind == "grass":
        labels = everything
    elif domain_kind == "isotropic":
        if space is None:
            raise ValueError(f"family {family} has no invariant form")
        labels = [s for s in everything if space.is_totally_isotropic(s)]
    elif domain_kind == "nondeg":
        if space is None:
            raise ValueError(f"family {family} has no invariant form")
        if subtype is None:
            labels = [s for s in everything if space.is_nondegenerate_on(s)]
        else:
            labels = [s for s in everything
                      if classify_subspace(space, s) == subtype]
    else:
        raise ValueError(f"unknown domain kind {domain_kind!r}")
    if not labels:
        raise ValueError(
            f"{family}({d},{q}) has no {subtype or domain_kind} {k}-subspaces"
        )
    if len(labels) > limit:
        raise CapacityError(f"domain of size {len(labels)} exceeds {limit}")
    dom = LabeledDomain("subspace", labels,
                        f"{domain_kind}:{k} subspaces of GF({F.q})^{d}")
    perms = []
    for M in mats:
        perms.append(Permutation(
            dom.index[rref(F, mat_mul(F, s, M) if s else ())] for s in labels
        ))
    if semilinear:
        perms.append(Permutation(
            dom.index[tuple(tuple(F.frobenius(a) for a in row) for row in s)]
            for s in labels
        ))
    name = f"{family}:{d},{q}@{domain_kind}:{k}" + (
        f",{subtype}" if subtype else ""
    )
    g = PermGroup(perms, len(labels))
    return _check_transitive(GroupAction(g, dom, name, formed_space=space))


def projective_linear(variant: str, d: int, q: int) -> GroupAction:
    """psl / pgl / pgammal acting on the projective points of GF(q)^d."""
    family = "sl" if variant == "psl" else "gl"
    act = classical_action(family, d, q, "grass", 1,
                           semilinear=(variant == "pgammal"))
    act.name = f"{variant}:{d},{q}"
    return act


# -- derived actions -------------------------------------------------------


def action_on_ksubsets(base: GroupAction, k: int,
                       limit: int = DEFAULT_DOMAIN_LIMIT) -> GroupAction:
    n = base.degree
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < degree")
    if comb(n, k) > limit:
        raise CapacityError(f"binom({n},{k}) exceeds the domain limit")
    labels = list(itertools.combinations(range(n), k))
    dom = LabeledDomain("ksubset", labels, f"{k}-subsets of {n} points")
    perms = []
    for g in base.group.gen_images():
        perms.append(Permutation(
            dom.index[tuple(sorted(g[p] for p in lab))] for lab in labels
        ))
    grp = PermGroup(perms, len(labels))
    return _check_transitive(GroupAction(
        grp, dom, f"{base.name}@ksubsets:{k}"
    ))


def regular_action(base: GroupAction, limit: int = DEFAULT_DOMAIN_LIMIT) -> GroupAction:
    """Right-regular action of the abstract group on its own elements."""
    if base.group.order > limit:
        raise CapacityError("group too large for the regular action")
    table = ElementTable(base.group, limit)
    gens = [
        table.right_regular_permutation(table.index[g.images])
        for g in base.group.generators
    ]
    labels = [Permutation(e).cycle_string() for e in table.elements]
    dom = LabeledDomain("element", labels, "group elements in chain order")
    grp = PermGroup(gens, len(table))
    assert grp.order == base.group.order
    act = GroupAction(grp, dom, f"{base.name}@regular")
    act.element_table = table
    return _check_transitive(act)


def wreath_imprimitive(bottom: GroupAction, top: GroupAction) -> GroupAction:
    """bottom wr top on pairs (delta, gamma); blocks are the gamma fibers."""
    a, b = bottom.degree, top.degree
    n = a * b
    gens = []
    for gamma in range(b):
        for h in bottom.group.gen_images():
            images = list(range(n))
            for delta in range(a):
                images[gamma * a + delta] = gamma * a + h[delta]
            gens.append(Permutation(images))
    for kimg in top.group.gen_images():
        images = [0] * n
        for gamma in range(b):
            for delta in range(a):
                images[gamma * a + delta] = kimg[gamma] * a + delta
        gens.append(Permutation(images))
    grp = PermGroup(gens, n)
    expected = bottom.group.order ** b * top.group.order
    assert grp.order == expected, (grp.order, expected)
    blocks = BlockSystem.from_assignment([p // a for p in range(n)])
    labels = [(p % a, p // a) for p in range(n)]
    dom = LabeledDomain("tuple", labels, "block-imprimitive pairs")
    return _check_transitive(GroupAction(
        grp, dom, f"{bottom.name} wr {top.name}@imprimitive", blocks=blocks
    ))


def wreath_product_action(bottom: GroupAction, top: GroupAction,
                          limit: int = DEFAULT_DOMAIN_LIMIT) -> GroupAction:
    """bottom wr top on functions from the top domain to the bottom one."""
    a, b = bottom.degree, top.degree
    if a ** b > limit:
        raise CapacityError(f"{a}^{b} exceeds the domain limit")
    labels = list(itertools.product(range(a), repeat=b))
    dom = LabeledDomain("tuple", labels, "functions top -> bottom")
    gens = []
    for gamma in range(b):
        for h in bottom.group.gen_images():
            imgs = []
            for f in labels:
                g = list(f)
                g[gamma] = h[f[gamma]]
                imgs.append(dom.index[tuple(g)])
            gens.append(Permutation(imgs))
    for kimg in top.group.gen_images():
        kinv = [0] * b
        for i, j in enumerate(kimg):
            kinv[j] = i
        imgs = []
        for f in labels:
            imgs.append(dom.index[tuple(f[kinv[gamma]] for gamma in range(b))])
        gens.append(Permutation(imgs))
    grp = PermGroup(gens, len(labels))
    expected = bottom.group.order ** b * top.group.order
    assert grp.order == expected, (grp.order, expected)
    return _check_transitive(GroupAction(
        grp, dom, f"{bottom.name} wr {top.name}@product"
    ))


def product_action_oracle(bottom: GroupAction, top: GroupAction,
                          h_tuple: Sequence[Permutation], k: Permutation):
    """Direct evaluation of the product action law, for cross-checks.

    Returns the permutation of function-tuples induced by the element
    (h_1, ..., h_b) k, evaluated pointwise as f'(gamma) =
    h_{gamma k^-1}(f(gamma k^-1)).
    """
    a, b = bottom.degree, top.degree
    labels = list(itertools.product(range(a), repeat=b))
    index = {lab: i for i, lab in enumerate(labels)}
    kinv = k.inverse()
    imgs = []
    for f in labels:
        imgs.append(index[tuple(
            h_tuple[kinv(gamma)](f[kinv(gamma)]) for gamma in range(b)
        )])
    return Permutation(imgs)


# -- coset actions ---------------------------------------------------------


def coset_action(base: GroupAction, subgroup: PermGroup) -> GroupAction:
    grp, reps, kernel = base.group.coset_action(subgroup)
    labels = [r.cycle_string() for r in reps]
    dom = LabeledDomain("coset", labels, "right coset representatives")
    act = GroupAction(grp, dom, f"{base.name}@cosets", kernel_order=kernel)
    return _check_transitive(act)


# -- diagonal-type domain ---------------------------------------------------


@dataclass
class DiagonalLayers:
    """Generators of the symmetry layers acting on tuples T^(k-1).

    right: componentwise right multiplication (the first k-1 socle
    coordinates); left: the simultaneous left translation realizing the
    last coordinate; top: the coordinate permutations of Sym(k) in
    normalized-representative form; outer: supplied automorphisms of T
    applied entrywise.
    """

    table: ElementTable
    k: int
    domain: LabeledDomain
    right: list[Permutation]
    left: list[Permutation]
    top: list[Permutation]
    outer: list[Permutation]

    def full_group(self) -> PermGroup:
        return PermGroup(self.right + self.left + self.top + self.outer,
                         self.domain.size)


def diagonal_layers(t_action: GroupAction, k: int,
                    outer_index_maps: Optional[list[list[int]]] = None,
                    limit: int = 10**6) -> DiagonalLayers:
    """Build the layered action on T^(k-1) for a finite group T.

    outer_index_maps: permutations of element indices realizing outer
    automorphisms (supplied, not computed).  For alt:5 the conjugation
    by a point transposition is filled in automatically.
    """
    if k < 3:
        raise ValueError("diagonal domains need k >= 3")
    table = ElementTable(t_action.group)
    size = len(table)
    if size ** (k - 1) > limit:
        raise CapacityError(f"|T|^(k-1) = {size ** (k - 1)} exceeds {limit}")
    coords = k - 1
    labels = list(itertools.product(range(size), repeat=coords))
    dom = LabeledDomain("tuple", labels, "socle coset representatives")
    mul, inv = table.mul, table.inv

    def tuple_perm(fn) -> Permutation:
        return Permutation(dom.index[fn(t)] for t in labels)

    right = []
    for i in range(coords):
        for gi in (table.index[g.images] for g in t_action.group.generators):
            right.append(tuple_perm(
                lambda t, i=i, gi=gi:
                t[:i] + (mul(t[i], gi),) + t[i + 1:]
            ))
    left = []
    for gi in (table.index[g.images] for g in t_action.group.generators):
        ci = inv(gi)
        left.append(tuple_perm(
            lambda t, ci=ci: tuple(mul(ci, x) for x in t)
        ))
    # Sym(k) on coordinates 0..k-1, with coordinate k-1 pinned to the
    # identity by renormalizing: after permuting, divide on the left by
    # the entry that lands in the last slot.
    top = []
    sym_k = symmetric(k).group
    for a in sym_k.gen_images():
        a_inv = [0] * k
        for i, j in enumerate(a):
            a_inv[j] = i

        def apply_top(t, a_inv=a_inv):
            full = t + (0,)
            moved = tuple(full[a_inv[j]] for j in range(k))
            norm = inv(moved[k - 1])
            return tuple(mul(norm, moved[j]) for j in range(k - 1))

        top.append(tuple_perm(apply_top))
    if outer_index_maps is None and t_action.name == "alt:5":
        tau = Permutation.from_cycles(5, [[0, 1]])
        amap = [
            table.index[(tau * Permutation(e) * tau).images]
            for e in table.elements
        ]
        outer_index_maps = [amap]
    outer = []
    for amap in outer_index_maps or []:
        outer.append(tuple_perm(lambda t, amap=amap: tuple(amap[x] for x in t)))
    return DiagonalLayers(table, k, dom, right, left, top, outer)
