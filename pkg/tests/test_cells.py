import itertools

import pytest

import oracles
from orthocell import build_root_system
from orthocell.cells import (
    OrbitLabel,
    OrthogonalSet,
    ResourceLimitError,
    TheoremViolation,
    all_nonincreasing_numberings,
    apply_swaps,
    bad_orderings,
    combination_roots,
    enumerate_orthogonal_sets,
    fixed_points,
    identity_cell,
    make_orthocell,
    nonincreasing_numbering,
    orbit_poset,
    orthocell_from_json,
    rearrangement_path,
    schubert_subset,
    subcells,
    verify_commutation_closure,
    verify_dichotomy,
    verify_poset_isomorphism,
    verify_positivity_lemma,
)
from orthocell.weyl import PreconditionError, compose, from_word, identity, reflection_element

B2 = build_root_system("B2")
E1_MINUS_E2, E2, E1, E1_PLUS_E2 = (1, 0), (0, 1), (1, 1), (1, 2)
A3 = build_root_system("A3")
T12, T34, T13, T24, T14, T23 = (1, 0, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1), (0, 1, 0)


def _sets(rs, d):
    return [s for s in enumerate_orthogonal_sets(rs, d) if len(s) == d]


# -- enumeration -------------------------------------------------------------


def test_a3_pairs_are_the_three_transposition_pairs():
    pairs = {frozenset(s.roots) for s in _sets(A3, 2)}
    assert pairs == {frozenset({T12, T34}), frozenset({T13, T24}), frozenset({T14, T23})}


def test_b2_pairs():
    pairs = {frozenset(s.roots) for s in _sets(B2, 2)}
    assert pairs == {frozenset({E1, E2}), frozenset({E1_MINUS_E2, E1_PLUS_E2})}


def test_enumeration_matches_brute_force():
    for name in ["B3", "C3", "G2", "A4", "D4"]:
        rs = build_root_system(name)
        got = {s.roots for s in enumerate_orthogonal_sets(rs, 3)}
        want = set()
        for d in range(4):
            for combo in itertools.combinations(rs.positive_roots, d):
                if all(rs.is_orthogonal(a, b) for a, b in itertools.combinations(combo, 2)):
                    want.add(tuple(sorted(combo, key=rs.index)))
        assert got == want, name


def test_enumeration_is_deterministic_and_includes_empty_set():
    rs = build_root_system("F4")
    first = enumerate_orthogonal_sets(rs, 4)
    assert first == enumerate_orthogonal_sets(rs, 4)
    assert first[0].roots == ()
    assert enumerate_orthogonal_sets(build_root_system("A1"), 0) == [OrthogonalSet(())]


def test_resource_cap(monkeypatch):
    with pytest.raises(ResourceLimitError):
        enumerate_orthogonal_sets(A3, 2, cap=5)
    with pytest.raises(ResourceLimitError):
        enumerate_orthogonal_sets(build_root_system("E7"), 1)
    assert len(enumerate_orthogonal_sets(build_root_system("E7"), 1, cap=1000)) == 64
    monkeypatch.setenv("ORTHOCELL_CAP", "3")
    with pytest.raises(ResourceLimitError):
        enumerate_orthogonal_sets(A3, 1)


def test_orthogonal_set_validation():
    with pytest.raises(PreconditionError):
        OrthogonalSet.of(B2, [E1, E1_MINUS_E2])
    with pytest.raises(PreconditionError):
        OrthogonalSet.of(B2, [(-1, 0)])
    with pytest.raises(PreconditionError):
        OrthogonalSet.of(B2, [(2, 0)])


# -- numberings --------------------------------------------------------------


def test_numbering_examples():
    short = OrthogonalSet.of(B2, [E1, E2])
    assert nonincreasing_numbering(B2, short).seq == (E1, E2)
    assert [n.seq for n in all_nonincreasing_numberings(B2, short)] == [(E1, E2)]
    assert bad_orderings(B2, short) == [(E2, E1)]
    long_ = OrthogonalSet.of(B2, [E1_MINUS_E2, E1_PLUS_E2])
    assert nonincreasing_numbering(B2, long_).seq == (E1_MINUS_E2, E1_PLUS_E2)
    assert len(all_nonincreasing_numberings(B2, long_)) == 2
    single = OrthogonalSet.of(B2, [E2])
    assert nonincreasing_numbering(B2, single).seq == (E2,)


# -- positivity lemma ---------------------------------------------------------


def test_combination_roots_b2():
    combos = dict(combination_roots(B2, (E1, E2)))
    assert combos == {E1: (1, 0), E1_PLUS_E2: (1, 1), E1_MINUS_E2: (1, -1)}


def test_combination_roots_type_a_and_rank_one():
    assert combination_roots(A3, (T12, T34)) == [(T12, (1, 0))]
    rs = build_root_system("G2")
    assert combination_roots(rs, ((3, 2),)) == [((3, 2), (1,))]


def test_positivity_examples():
    assert verify_positivity_lemma(B2, (E1, E2)).ok
    bad = verify_positivity_lemma(B2, (E2, E1))
    assert not bad.ok
    assert bad.witness["root"] == [-1, 0]  # e2 - e1
    g2 = build_root_system("G2")
    assert verify_positivity_lemma(g2, ((1, 0), (3, 2))).ok
    assert verify_positivity_lemma(g2, ((3, 2), (1, 0))).ok


@pytest.mark.parametrize("name", ["B2", "C2", "B3", "C3", "G2", "A3"])
def test_positivity_matches_brute_force_oracle(name):
    rs = build_root_system(name)
    for omega in enumerate_orthogonal_sets(rs, 3):
        if not len(omega):
            continue
        for seq in itertools.permutations(omega.roots):
            witness = oracles.positive_combination_witness(rs.all_roots, seq)
            assert verify_positivity_lemma(rs, seq).ok == (not witness), seq


def test_dichotomy_and_closure_b2():
    assert verify_dichotomy(B2, (E1, E2)).ok
    assert verify_dichotomy(B2, (E1_MINUS_E2, E1_PLUS_E2)).info["first_long"]
    assert verify_commutation_closure(B2, (E1, E2)).ok
    assert verify_commutation_closure(B2, (E2,)).ok


def test_closure_on_maximal_f4_sets():
    rs = build_root_system("F4")
    for omega in _sets(rs, 4):
        for nb in all_nonincreasing_numberings(rs, omega):
            assert verify_commutation_closure(rs, nb.seq).ok


# -- rearrangement -----------------------------------------------------------


def test_rearrangement_examples():
    seq = (E1_MINUS_E2, E1_PLUS_E2)
    assert rearrangement_path(B2, seq, seq) == []
    path = rearrangement_path(B2, seq, seq[::-1])
    assert path == [0]
    assert apply_swaps(seq, path) == list(seq[::-1])
    with pytest.raises(PreconditionError):
        rearrangement_path(B2, (E1, E2), (E2, E1))


def test_rearrangement_alarm_on_comparable_swap(monkeypatch):
    import orthocell.cells as cells

    monkeypatch.setattr(cells, "is_nonincreasing", lambda rs, s: True)
    with pytest.raises(TheoremViolation):
        rearrangement_path(B2, (E1, E2), (E2, E1))


# -- orthocells, fixed points, subcells ----------------------------------------


def test_fixed_points():
    e = identity(A3)
    assert fixed_points(make_orthocell(e, [])) == [e]
    s = reflection_element(A3, T13)
    assert set(fixed_points(make_orthocell(e, [T13]))) == {e, s}
    assert len(fixed_points(identity_cell(A3, [T12, T34]))) == 4


def test_representative_independence():
    rs = build_root_system("C3")
    omega = _sets(rs, 2)[0]
    w = from_word(rs, "s2 s3 s1")
    cell = make_orthocell(w, omega)
    for g in cell.members():
        other = make_orthocell(g, omega)
        assert other == cell
        assert {c.rep for c in subcells(other)} == {c.rep for c in subcells(cell)}
    assert cell.rep == min(cell.members())


def test_subcell_counts():
    rs = build_root_system("B3")
    assert len(subcells(make_orthocell(identity(rs), []))) == 1
    assert len(subcells(identity_cell(rs, _sets(rs, 2)[0]))) == 9
    three = _sets(rs, 3)[0]
    assert len(subcells(identity_cell(rs, three))) == 27
    cell = identity_cell(rs, _sets(rs, 2)[0])
    dims = sorted(c.d for c in subcells(cell))
    assert dims == [0] * 4 + [1] * 4 + [2]


def test_schubert_subset():
    cell = identity_cell(A3, [T12, T34])
    assert schubert_subset(cell, []) == cell.rep
    s12 = reflection_element(A3, T12)
    s34 = reflection_element(A3, T34)
    assert schubert_subset(cell, [1]) == s12
    assert schubert_subset(cell, [1, 2]) == compose(s12, s34)
    assert schubert_subset(cell, OrbitLabel.parse("*∞")) == compose(s12, s34)
    with pytest.raises(PreconditionError):
        schubert_subset(cell, [3])


# -- orbit poset -------------------------------------------------------------


def test_orbit_poset_d1_and_d2():
    p1 = orbit_poset(identity_cell(A3, [T13]))
    assert [str(x) for x in p1.labels] == ["*", "0", "∞"]
    assert len(p1.covers) == 2
    p2 = orbit_poset(identity_cell(A3, [T12, T34]))
    assert len(p2.labels) == 9 and len(p2.covers) == 12
    assert sorted(x.dim() for x in p2.labels) == [0] * 4 + [1] * 4 + [2]
    assert len(p2.minimal()) == 4 and [str(x) for x in p2.maximal()] == ["**"]
    assert verify_poset_isomorphism(p2).ok
    fixed = {p2.subcell_of[x].rep for x in p2.minimal()}
    assert fixed == set(fixed_points(p2.cell))


def test_orbit_poset_d3():
    rs = build_root_system("B3")
    poset = orbit_poset(identity_cell(rs, _sets(rs, 3)[0]))
    assert len(poset.labels) == 27
    assert verify_poset_isomorphism(poset).ok


def test_label_order():
    assert OrbitLabel.parse("0∞") <= OrbitLabel.parse("*∞")
    assert not OrbitLabel.parse("0∞") <= OrbitLabel.parse("∞*")
    assert OrbitLabel.parse("0*") < OrbitLabel.parse("**")


def test_dot_and_json_exports():
    cell = orthocell_from_json({"type": "A3", "rep": "s2", "omega": [[1, 0, 0], [0, 0, 1]]})
    poset = orbit_poset(cell)
    dot = poset.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 12
    data = poset.to_json()
    assert len(data["nodes"]) == 9
    assert sum(len(v) for v in data["covers"].values()) == 12
    assert orthocell_from_json(cell.to_json()) == cell
    with pytest.raises(PreconditionError):
        orthocell_from_json({"type": "A3"})
