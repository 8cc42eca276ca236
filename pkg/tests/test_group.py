import itertools
import random

import pytest

from selfsep.group import CapacityError, ElementTable, PermGroup
from selfsep.perm import Permutation


def closure_count(group):
    """Independent order oracle: BFS closure of the generators."""
    n = group.degree
    seen = {tuple(range(n))}
    frontier = list(seen)
    gens = [g.images for g in group.generators]
    while frontier:
        new = []
        for e in frontier:
            for g in gens:
                prod = tuple(g[i] for i in e)
                if prod not in seen:
                    seen.add(prod)
                    new.append(prod)
        frontier = new
    return len(seen)


def sym(n):
    gens = [[[0, 1]]]
    if n > 2:
        gens.append([list(range(n))])
    return PermGroup.from_cycles(n, gens)


PSL27 = PermGroup.from_cycles(8, [
    [[0, 1, 2, 3, 4, 5, 6]],
    [[0, 7], [1, 6], [2, 3], [4, 5]],
])


def test_symmetric_orders():
    assert sym(5).order == 120
    assert sym(4).order == 24


def test_psl27_order_vs_closure():
    assert PSL27.order == 168
    assert closure_count(PSL27) == 168


def test_gl42_order_formula():
    # GL(4,2) on 15 projective points, order (2^4-1)(2^4-2)(2^4-4)(2^4-8)
    from selfsep.zoo import projective_linear

    act = projective_linear("pgl", 4, 2)
    expected = (16 - 1) * (16 - 2) * (16 - 4) * (16 - 8)
    assert act.degree == 15
    assert act.group.order == expected == 20160


def test_chain_deterministic():
    g1 = sym(5)
    g2 = sym(5)
    assert g1.chain().base == g2.chain().base
    assert list(g1.chain().iter_images()) == list(g2.chain().iter_images())


def test_iteration_exact_and_identity_first():
    els = list(PSL27.iter_elements())
    assert len(els) == 168
    assert els[0].is_identity()
    assert len({e.images for e in els}) == 168


def test_iteration_matches_order_small():
    for group in (sym(4), PSL27, PermGroup.from_cycles(6, [[[0, 1, 2, 3, 4, 5]]])):
        assert sum(1 for _ in group.iter_elements()) == group.order


def test_iteration_limit():
    with pytest.raises(CapacityError, match="backtrack"):
        list(sym(5).iter_elements(limit=100))


def test_membership():
    g = sym(4)
    assert Permutation.from_cycles(4, [[0, 1, 2]]) in g
    alt4 = PermGroup.from_cycles(4, [[[0, 1, 2]], [[1, 2, 3]]])
    assert alt4.order == 12
    assert Permutation.from_cycles(4, [[0, 1]]) not in alt4


def test_orbits():
    assert sym(4).orbit_of(0) == {0, 1, 2, 3}
    g = PermGroup.from_cycles(3, [[[0, 1]]])
    assert g.orbit_of(2) == {2}
    c6 = PermGroup.from_cycles(6, [[[0, 1, 2, 3, 4, 5]]])
    assert c6.orbit_of(0) == set(range(6))
    assert c6.is_transitive()


def test_orbit_stabilizer_identity():
    for group in (sym(4), PSL27, PermGroup.from_cycles(7, [[[0, 1, 2, 3, 4, 5, 6]]])):
        for x in range(group.degree):
            st = group.point_stabilizer(x)
            assert all(p(x) == x for p in st.generators)
            assert st.order * len(group.orbit_of(x)) == group.order


def test_point_stabilizer_examples():
    assert sym(4).point_stabilizer(0).order == 6
    c7 = PermGroup.from_cycles(7, [[[0, 1, 2, 3, 4, 5, 6]]])
    assert c7.point_stabilizer(0).order == 1
    from selfsep.zoo import action_on_ksubsets, symmetric

    pairs = action_on_ksubsets(symmetric(5), 2)
    # the stabilizer of the pair {1,2} has order 2! * 3!
    idx = pairs.domain.index[(1, 2)]
    assert pairs.group.point_stabilizer(idx).order == 12


def test_block_systems():
    assert sym(4).block_systems() == []
    c4 = PermGroup.from_cycles(4, [[[0, 1, 2, 3]]])
    systems = c4.block_systems()
    assert len(systems) == 1
    assert systems[0].block_count == 2 and systems[0].block_size == 2
    from selfsep.zoo import symmetric, wreath_imprimitive

    w = wreath_imprimitive(symmetric(2), symmetric(3))
    found = w.group.block_systems()
    assert any(s.block_count == 3 and s.block_size == 2 for s in found)
    for s in found:
        assert s.is_invariant_under(w.group)


def test_block_systems_need_transitivity():
    g = PermGroup.from_cycles(4, [[[0, 1]]])
    with pytest.raises(ValueError):
        g.block_systems()


def test_coset_action_examples():
    g = sym(4)
    st = g.point_stabilizer(0)
    act, reps, kernel = g.coset_action(st)
    assert act.degree == 4 and kernel == 1
    c4 = PermGroup.from_cycles(4, [[[0, 1, 2, 3]]])
    act, _, kernel = g.coset_action(c4)
    assert act.degree == 6 and act.is_transitive()
    g3 = sym(3)
    act, _, kernel = g3.coset_action(g3)
    assert act.degree == 1 and kernel == 6


def test_coset_action_requires_subgroup():
    with pytest.raises(ValueError):
        sym(4).coset_action(PermGroup.from_cycles(4, [[[0, 1, 2]], [[0, 1]]]))


def test_coset_action_isomorphic_to_natural():
    # explicit point bijection between cosets of a stabilizer and points
    for group in (sym(4), PSL27, PermGroup.from_cycles(6, [[[0, 1, 2, 3, 4, 5]]])):
        x = 0
        st = group.point_stabilizer(x)
        act, reps, kernel = group.coset_action(st)
        assert kernel == 1
        phi = [reps[i](x) for i in range(act.degree)]
        assert sorted(phi) == list(range(group.degree))
        for g_orig, g_act in zip(group.generators, act.generators):
            for i in range(act.degree):
                assert g_orig(phi[i]) == phi[g_act(i)]


def test_homogeneity_degrees():
    assert sym(5).homogeneity_degree(2) == {1: 1, 2: 1}
    c6 = PermGroup.from_cycles(6, [[[0, 1, 2, 3, 4, 5]]])
    assert c6.homogeneity_degree(2)[2] == 3
    d5 = PermGroup.from_cycles(5, [[[0, 1, 2, 3, 4]], [[1, 4], [2, 3]]])
    assert d5.homogeneity_degree(2)[2] == 2


def test_homogeneity_limits():
    with pytest.raises(ValueError):
        sym(5).homogeneity_degree(3)
    with pytest.raises(CapacityError):
        sym(8).homogeneity_degree(4, limit=10)


def test_subset_orbit_invariance():
    labels = PSL27.subset_orbit_labels(2)
    # orbit labels constant under generator images
    for mask, lab in labels.items():
        pts = [p for p in range(8) if mask >> p & 1]
        for g in PSL27.generators:
            img = 0
            for p in pts:
                img |= 1 << g(p)
            assert labels[img] == lab


def test_element_table():
    table = ElementTable(sym(3))
    assert len(table) == 6
    assert table.elements[0] == (0, 1, 2)
    for i in range(6):
        assert table.mul(i, table.inv(i)) == 0
    for i in range(6):
        for j in range(6):
            for k in range(6):
                assert table.mul(table.mul(i, j), k) == table.mul(i, table.mul(j, k))


def test_random_element_uniformish():
    rng = random.Random(0)
    g = sym(4)
    seen = {g.random_element(rng).images for _ in range(600)}
    assert len(seen) == 24


def test_hinted_chain_base_prefix():
    g = sym(5)
    chain = g.chain(base_hint=(3, 1))
    assert chain.base[:2] == [3, 1]
    assert chain.order() == 120
