import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from kunzlattice.errors import (
    IdempotentInput,
    InvalidPoset,
    UnsupportedMultiplicityForLayout,
    WrongMultiplicity,
)
from kunzlattice.ideal import from_generator_set, from_kunz, is_idempotent
from kunzlattice.kunz import intersect_kunz, sum_kunz, union_kunz
from kunzlattice.poset import (
    AbstractPoset,
    build_preceq,
    covers_of,
    depth,
    down_set,
    enumerate_ideals,
    export_hasse,
    glb,
    ideal_poset,
    is_lattice,
    join,
    lub,
    meet,
    preceq_via_covers,
    quarks,
    unique_cover,
    up_set,
)
from kunzlattice.semigroup import NumericalSemigroup, semigroups_upto

from conftest import m3_semigroups
from oracles import (
    hasse_from_relation,
    ideals_by_gap_subsets,
    longest_chain_to_top,
    set_preceq,
)

NS = NumericalSemigroup.from_generators


def K(P, *v):
    return P.index_of(v)


@pytest.fixture(scope="module")
def p31317():
    return ideal_poset(NS([3, 13, 17]))


def test_enumerate_examples():
    assert len(enumerate_ideals(NS([1]))) == 1
    assert [I.kunz for I in enumerate_ideals(NS([2, 3])).ideals] == [(1,), (0,)]
    P = enumerate_ideals(NS([3, 4, 5]))
    assert {I.kunz for I in P.ideals} == {(1, 1), (1, 0), (0, 1), (0, 0)}
    assert P.preceq is None


def test_ordering(p31317):
    S = p31317.ambient
    assert p31317.ideals[0].kunz == S.kunz
    assert p31317.ideals[-1].kunz == (0, 0)
    keys = [(-sum(I.kunz), tuple(I.kunz)) for I in p31317.ideals]
    assert keys == sorted(keys)


def test_enumeration_matches_gap_subsets():
    for S in semigroups_upto(6):
        want = ideals_by_gap_subsets(list(S.minimal_generators))
        got = enumerate_ideals(S)
        assert len(got) == len(want)
        got_gaps = {tuple(n for n in range(S.frobenius + 1) if n not in I) for I in got.ideals}
        assert got_gaps == set(want)


def test_preceq_examples():
    S = NS([4, 5, 6, 7])
    P = ideal_poset(S)
    assert P.preceq[0].all()
    a = P.index_of(from_generator_set(S, {0, 2}))
    b = P.index_of(from_generator_set(S, {0, 1, 2}))
    assert P.kunz(a) == (1, 0, 1) and P.kunz(b) == (0, 0, 1)
    assert P.subseteq[a, b] and not P.preceq[a, b]

    T = NS([3, 7, 8])
    Q = ideal_poset(T)
    a = Q.index_of(from_generator_set(T, {0, 4}))
    b = Q.index_of(from_generator_set(T, {0, 1}))
    assert Q.subseteq[a, b] and not Q.preceq[a, b]


def test_preceq_pair_with_kunz_one_zero_zero():
    # (1,0,0) is {0,2,3}+S; adding {0,3}+S to (1,0,1) reaches it
    P = ideal_poset(NS([4, 5, 6, 7]))
    assert P.preceq[K(P, 1, 0, 1), K(P, 1, 0, 0)]


@pytest.mark.parametrize("gens", [[3, 4], [3, 5, 7], [3, 7, 8], [4, 5, 6, 7], [3, 8, 10], [5, 6, 7, 8, 9]])
def test_preceq_matches_set_oracle(gens):
    S = NS(gens)
    P = ideal_poset(S)
    vecs = [I.kunz for I in P.ideals]
    bound = S.multiplicity * (max(S.kunz) + 2)
    rel = np.array(set_preceq(vecs, bound))
    assert np.array_equal(rel, P.preceq)
    assert sorted(hasse_from_relation(rel.tolist())) == P.covers
    assert longest_chain_to_top(rel.tolist()) == P.depths


@given(m3_semigroups(max_genus=12))
def test_fast_path_agrees(S):
    P = ideal_poset(S)
    assert np.array_equal(preceq_via_covers(P), P.preceq)


@given(m3_semigroups(max_genus=9) | st.sampled_from([NS([4, 7, 9, 10]), NS([4, 5, 6, 7]), NS([5, 7, 9])]))
def test_partial_order_axioms(S):
    P = ideal_poset(S)
    R = P.preceq
    n = len(P)
    assert R.diagonal().all()
    assert not (R & R.T & ~np.eye(n, dtype=bool)).any()
    assert np.array_equal((R.astype(int) @ R.astype(int)) > 0, R)
    assert not (R & ~P.subseteq).any()
    assert R[0].all() and R[:, -1].all()


def test_unique_cover_examples(p31317):
    S = p31317.ambient
    assert unique_cover(from_kunz(S, (4, 0))).kunz == (3, 0)
    assert unique_cover(from_kunz(S, (0, 4))).kunz == (0, 3)
    with pytest.raises(IdempotentInput):
        unique_cover(from_kunz(S, (1, 1)))
    with pytest.raises(WrongMultiplicity):
        unique_cover(from_kunz(NS([4, 5, 6, 7]), (1, 0, 1)))


def test_covers_examples(p31317):
    assert covers_of(p31317, len(p31317) - 1) == []
    assert [p31317.kunz(j) for j in covers_of(p31317, K(p31317, 4, 0))] == [(3, 0)]
    P = ideal_poset(NS([4, 7, 9, 10]))
    got = {P.kunz(j) for j in covers_of(P, K(P, 2, 2, 0))}
    assert got == {(1, 2, 0), (2, 1, 0), (0, 2, 0)}
    assert not is_idempotent(P.ideals[K(P, 2, 2, 0)])


def test_quark_examples(p31317):
    assert [q.kunz for q in quarks(ideal_poset(NS([3, 4])))] == [(1, 1)]
    S = NS([3, 5, 7])
    want = {from_generator_set(S, {0, 4}).kunz, from_generator_set(S, {0, 2}).kunz}
    assert {q.kunz for q in quarks(ideal_poset(S))} == want
    assert {q.kunz for q in quarks(p31317)} == {(3, 5), (4, 4), (1, 5)}


def test_depth_examples(p31317):
    assert depth(p31317, len(p31317) - 1) == 0
    assert depth(p31317, 0) == 9
    assert depth(p31317, K(p31317, 1, 5)) == 6


def test_join_meet_examples(p31317):
    P = p31317
    n = len(P)
    for j in range(n):
        assert join(P, 0, j) == j
        assert meet(P, j, n - 1) == j
    a, b = K(P, 4, 0), K(P, 0, 4)
    assert not P.preceq[a, b] and not P.preceq[b, a]
    assert P.kunz(join(P, a, b)) == (0, 0)
    assert P.kunz(meet(P, a, b)) == (4, 4)


def test_is_lattice_examples():
    for gens in ([3, 7, 8], [2, 3], [3, 13, 17]):
        assert is_lattice(ideal_poset(NS(gens))) == (True, None)


def test_up_down_examples(p31317):
    P = p31317
    assert up_set(P, 0) == set(range(len(P)))
    assert down_set(P, 0) == {0}
    T = NS([3, 13, 17]).adjoin_gap(14)
    assert T.kunz == (4, 4)
    up = {P.kunz(j) for j in up_set(P, K(P, 4, 4))}
    assert len(up) == len(enumerate_ideals(T))
    assert up == {I.kunz for I in enumerate_ideals(T).ideals}


def test_export_dot():
    dot = export_hasse(ideal_poset(NS([1])))
    assert dot.count("->") == 0 and dot.count("label=") == 1
    dot = export_hasse(ideal_poset(NS([3, 4, 5])))
    assert "rankdir=BT" in dot
    assert dot.count("label=") == 4 and dot.count("->") == 4
    assert 'label="0,1"' in dot
    assert dot.count("fillcolor=gray") == 3  # (1,1), (1,0), (0,0) are semigroups; (0,1) is not
    with pytest.raises(UnsupportedMultiplicityForLayout):
        export_hasse(ideal_poset(NS([4, 5, 6, 7])), positions=True)
    assert "pos=" not in export_hasse(ideal_poset(NS([4, 5, 6, 7])))


def test_export_json(p31317):
    data = json.loads(export_hasse(p31317, format="json"))
    assert data["ambient"] == [3, 13, 17]
    assert len(data["nodes"]) == 29 and len(data["covers"]) == 47
    node = data["nodes"][0]
    assert set(node) == {"id", "kunz", "idempotent", "depth"}
    assert node == {"id": 0, "kunz": [4, 5], "idempotent": True, "depth": 9}
    assert all(n["depth"] == sum(n["kunz"]) for n in data["nodes"])


def test_export_subseteq():
    P = ideal_poset(NS([3, 7, 8]))
    pre = json.loads(export_hasse(P, order="preceq", format="json"))["covers"]
    sub = json.loads(export_hasse(P, order="subseteq", format="json"))["covers"]
    assert pre != sub
    P = ideal_poset(NS([3, 4]))
    assert export_hasse(P, order="preceq") == export_hasse(P, order="subseteq")
    with pytest.raises(ValueError):
        export_hasse(P, order="nope")


def test_hasse_31317_reference_counts(p31317):
    # node/edge counts and degree histogram computed once by the set oracle
    from collections import Counter

    assert (len(p31317), len(p31317.covers)) == (29, 47)
    deg = Counter(
        (len(covers_of(p31317, i)), sum(1 for e in p31317.covers if e[1] == i))
        for i in range(len(p31317))
    )
    assert deg == Counter({(1, 2): 11, (1, 1): 5, (3, 2): 4, (2, 2): 3, (2, 1): 2, (3, 1): 2, (0, 2): 1, (3, 0): 1})


def test_abstract_poset_validation(p31317):
    A = AbstractPoset.from_poset(p31317)
    assert A.validate() == (0, 28)
    assert AbstractPoset.from_json(export_hasse(p31317, format="json")) == A
    assert AbstractPoset.from_json(A.to_json()) == A
    with pytest.raises(InvalidPoset, match="cycle"):
        AbstractPoset(3, ((0, 1), (1, 2), (2, 1))).validate()
    with pytest.raises(InvalidPoset, match="unique minimum"):
        AbstractPoset(3, ((0, 2), (1, 2))).validate()
    with pytest.raises(InvalidPoset, match="transitivity"):
        AbstractPoset(3, ((0, 1), (1, 2), (0, 2))).validate()
    with pytest.raises(InvalidPoset):
        AbstractPoset(2, ((0, 5),)).validate()


# -- multiplicity-3 structure --------------------------------------------------


@given(m3_semigroups(max_genus=12))
def test_cover_map_properties(S):
    P = ideal_poset(S)
    seen = {}
    for i, I in enumerate(P.ideals):
        if P.idempotent_mask[i]:
            continue
        c = unique_cover(I)
        assert covers_of(P, i) == [P.index_of(c)]
        assert sum(I.kunz) - sum(c.kunz) == 1
        assert c.kunz not in seen
        seen[c.kunz] = I.kunz
        for L in P.ideals:
            s = sum_kunz(I.kunz, L.kunz)
            if s != I.kunz:
                assert s == sum_kunz(c.kunz, L.kunz)


@given(m3_semigroups(max_genus=10))
def test_join_with_idempotent_is_sum(S):
    P = ideal_poset(S)
    for i in range(len(P)):
        if not P.idempotent_mask[i]:
            continue
        for j in range(len(P)):
            assert lub(P, i, j) == P.index_of(sum_kunz(P.kunz(i), P.kunz(j)))


@given(m3_semigroups(max_genus=10))
def test_missing_frobenius(S):
    P = ideal_poset(S)
    f = S.frobenius
    bar = P.index_of(S.adjoin_gap(f).kunz_wrt(3))
    above = up_set(P, bar)
    for i, I in enumerate(P.ideals):
        assert (i not in above) == (f not in I)


@given(m3_semigroups(max_genus=12))
def test_missing_second_pseudo_frobenius(S):
    from kunzlattice.semigroup import Classification

    if S.classify() is not Classification.NON_IRREDUCIBLE:
        return
    P = ideal_poset(S)
    f1, f = sorted(S.pseudo_frobenius())
    k1, k2 = S.kunz
    Sp = P.index_of(S.adjoin_gap(f1).kunz_wrt(3))
    above = up_set(P, Sp)
    got = {I.kunz for i, I in enumerate(P.ideals) if f1 in I and i not in above}
    if f1 % 3 == 1:
        want = {I.kunz for I in P.ideals if I.kunz[0] + k1 == I.kunz[1] and I.kunz[0] <= k1 - 1}
    else:
        want = {I.kunz for I in P.ideals if I.kunz[1] + k2 + 1 == I.kunz[0] and I.kunz[1] <= k2 - 1}
    assert got == want


@pytest.mark.parametrize("k", range(0, 9))
def test_multiplicity_two_is_chain(k):
    P = ideal_poset(NS([2, 2 * k + 1]))
    assert len(P) == k + 1
    assert all(P.idempotent_mask)
    assert P.covers == [(i, i + 1) for i in range(k)]


@given(m3_semigroups(max_genus=8), st.randoms(use_true_random=False))
def test_meet_fold_order_irrelevant(S, rnd):
    P = ideal_poset(S)
    n = len(P)
    for i, j in itertools.combinations(range(n), 2):
        lower = sorted(down_set(P, i) & down_set(P, j))
        rnd.shuffle(lower)
        acc = lower[0]
        for k in lower[1:]:
            acc = join(P, acc, k)
        assert acc == meet(P, i, j) == glb(P, i, j)


def test_general_m_join_uses_brute_force():
    P = ideal_poset(NS([4, 7, 9, 10]))
    for i, j in itertools.combinations(range(len(P)), 2):
        assert join(P, i, j) == lub(P, i, j)
        assert meet(P, i, j) == glb(P, i, j)


def test_relations_required():
    P = enumerate_ideals(NS([3, 4]))
    with pytest.raises(ValueError):
        covers_of(P, 0)
    assert build_preceq(P).preceq is not None
