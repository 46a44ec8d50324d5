import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthocell import build_root_system
from orthocell.weyl import (
    PreconditionError,
    act,
    compose,
    coset_contains,
    from_word,
    identity,
    inverse,
    reflection_element,
    simple_reflection,
    subgroup_elements,
    to_word,
)

A3 = build_root_system("A3")
# transposition (ij) in S4 <-> root e_i - e_j = alpha_i + ... + alpha_{j-1}
T12, T34, T13, T24 = (1, 0, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1)


def test_reflection_negates_its_root():
    for rs in (A3, build_root_system("G2"), build_root_system("B3")):
        for a in rs.all_roots:
            s = reflection_element(rs, a)
            assert act(s, a) == rs.negate(a)
            assert compose(s, s) == identity(rs)


def test_group_axioms():
    rs = build_root_system("B3")
    u = from_word(rs, "s1 s2 s3 s2")
    assert compose(u, inverse(u)) == identity(rs)
    v = from_word(rs, "s3 s1")
    for a in rs.all_roots:
        assert act(compose(u, v), a) == act(u, act(v, a))


def test_orthogonal_reflections_commute():
    s12, s34 = reflection_element(A3, T12), reflection_element(A3, T34)
    assert compose(s12, s34) == compose(s34, s12)
    prod = compose(s12, s34)
    assert prod != identity(A3) and compose(prod, prod) == identity(A3)


def test_words_round_trip():
    rs = build_root_system("C3")
    for word in ["", "s1", "s2 s1", "s3 s2 s3", "s1 s2 s3 s2 s1"]:
        u = from_word(rs, word)
        assert from_word(rs, to_word(u)) == u
    assert from_word(rs, "e") == from_word(rs, "id") == identity(rs)
    assert from_word(rs, "1 2") == from_word(rs, "s1 s2")
    # left to right: "s1 s2" is s1 composed with s2 (s2 acts first)
    assert from_word(rs, "s1 s2") == compose(simple_reflection(rs, 1), simple_reflection(rs, 2))
    with pytest.raises(ValueError):
        from_word(rs, "s4")


def test_coset_contains_examples():
    e = identity(A3)
    s13 = reflection_element(A3, T13)
    assert coset_contains(e, [T12, T34], e)
    assert coset_contains(e, [T12], reflection_element(A3, T12))
    assert not coset_contains(e, [T12, T34], s13)
    with pytest.raises(PreconditionError):
        coset_contains(e, [T12, T13], e)


def test_subgroup_has_order_two_to_the_d():
    rs = build_root_system("D4")
    omega = [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 2, 1, 1)]
    assert all(rs.is_orthogonal(a, b) for a, b in itertools.combinations(omega, 2))
    group = subgroup_elements(rs, omega)
    assert len(set(group)) == 16


def test_order_is_lexicographic_on_perm():
    rs = build_root_system("A2")
    elems = [from_word(rs, w) for w in ["", "s1", "s2", "s1 s2", "s2 s1", "s1 s2 s1"]]
    assert sorted(elems) == sorted(elems, key=lambda u: u.perm)
    assert len(set(elems)) == 6


WORDS = st.lists(st.integers(min_value=1, max_value=4), max_size=8).map(
    lambda xs: " ".join(f"s{x}" for x in xs)
)
F4 = build_root_system("F4")


@settings(max_examples=200, deadline=None)
@given(WORDS, WORDS)
def test_action_preserves_inner_product(w1, w2):
    u = from_word(F4, w1)
    v = from_word(F4, w2)
    for a, b in zip(F4.all_roots[::7], F4.all_roots[3::11]):
        assert F4.inner(act(u, a), act(u, b)) == F4.inner(a, b)
    assert inverse(compose(u, v)) == compose(inverse(v), inverse(u))
