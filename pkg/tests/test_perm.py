import pytest
from hypothesis import given, strategies as st

from selfsep.perm import Permutation, parse_cycles, parse_image_array


def perms(max_degree=8):
    return st.integers(3, max_degree).flatmap(
        lambda n: st.permutations(list(range(n)))
    ).map(Permutation)


def test_identity_and_inverse():
    p = Permutation.from_cycles(3, [[0, 1, 2]])
    assert (Permutation.identity(3) * p) == p
    assert (p * p.inverse()).is_identity()


def test_hand_multiplication():
    # (0 1 2) then (0 1) sends 0->1->0, 1->2, 2->0->1: the cycle (1 2)
    a = Permutation.from_cycles(3, [[0, 1, 2]])
    b = Permutation.from_cycles(3, [[0, 1]])
    assert a * b == Permutation.from_cycles(3, [[1, 2]])


def test_degree_mismatch():
    with pytest.raises(ValueError):
        Permutation.from_cycles(3, [[0, 1]]) * Permutation.from_cycles(4, [[0, 1]])


def test_not_a_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


@given(perms(), perms(), perms())
def test_associativity(p, q, r):
    if p.degree == q.degree == r.degree:
        assert (p * q) * r == p * (q * r)


@given(perms())
def test_inverse_law(p):
    assert (p * p.inverse()).is_identity()
    assert p.inverse().inverse() == p


@given(perms())
def test_cycle_string_roundtrip(p):
    assert parse_cycles(p.cycle_string(), p.degree) == p


def test_cycle_string_format():
    p = Permutation.from_cycles(5, [[0, 1, 2], [3, 4]])
    assert p.cycle_string() == "(0,1,2)(3,4)"
    assert Permutation.identity(4).cycle_string() == "()"
    assert parse_cycles("()", 4) == Permutation.identity(4)


def test_image_array_roundtrip():
    p = Permutation.from_cycles(4, [[0, 2], [1, 3]])
    assert parse_image_array(list(p.images)) == p


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_cycles("(0,1")
    with pytest.raises(ValueError):
        parse_cycles("junk")


def test_order_and_pow():
    p = Permutation.from_cycles(6, [[0, 1, 2], [3, 4]])
    assert p.order() == 6
    assert (p ** 6).is_identity()
    assert p ** -1 == p.inverse()
