from itertools import permutations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cherednik.symgroup import (GroupAlgElem, Perm, all_perms, coset_reps, ga_multiply,
                                ga_transposition, simple, transposition, young_subgroup)

perms4 = st.permutations([1, 2, 3, 4]).map(Perm)


def test_transposition_examples():
    assert transposition(1, 2, 3).to_list() == [2, 1, 3]
    s12, s23 = transposition(1, 2, 3), transposition(2, 3, 3)
    assert s12 * s23 * s12 == transposition(1, 3, 3)
    assert transposition(2, 4, 4) == transposition(4, 2, 4)


@pytest.mark.parametrize("args", [(0, 1, 3), (1, 4, 3), (2, 2, 3)])
def test_transposition_rejects_bad_indices(args):
    with pytest.raises(ValueError):
        transposition(*args)


def test_group_algebra_examples():
    s12, s13 = ga_transposition(1, 2, 3), ga_transposition(1, 3, 3)
    e = GroupAlgElem.of(Perm.identity(3))
    assert ga_multiply(s12, s12) == e
    assert ga_multiply(s12 + s13, s12) == e + GroupAlgElem.of(transposition(1, 3, 3) * transposition(1, 2, 3))
    assert ga_multiply(s13.scale(0), s12) == GroupAlgElem.zero(3)


def test_coset_reps_examples():
    assert coset_reps(2, 2) == [Perm.identity(2)]
    assert coset_reps(1, 2) == [Perm.identity(2), transposition(1, 2, 2)]
    assert len(coset_reps(1, 3)) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cosets_factor_the_group(n):
    for k in range(n + 1):
        reps = coset_reps(k, n)
        assert len(reps) == comb(n, k)
        products = [r * h for r in reps for h in young_subgroup(k, n)]
        assert sorted(products) == sorted(all_perms(n))
        for r in reps:
            # minimal length in the coset
            assert all(r.length() <= (r * h).length() for h in young_subgroup(k, n))


@given(perms4, st.sampled_from([(p, q) for p in range(1, 5) for q in range(1, 5) if p != q]))
def test_conjugating_a_transposition(s, pq):
    p, q = pq
    assert s * transposition(p, q, 4) * s.inverse() == transposition(s(p), s(q), 4)


@given(perms4)
def test_reduced_word(s):
    word = s.reduced_word()
    assert len(word) == s.length()
    prod = Perm.identity(4)
    for i in word:
        prod = prod * simple(i, 4)
    assert prod == s


@given(perms4, perms4)
def test_action_on_tuples_is_a_left_action(s, t):
    tup = ("a", "b", "c", "d")
    assert (s * t).act_on_tuple(tup) == s.act_on_tuple(t.act_on_tuple(tup))


def test_group_algebra_associative():
    elems = [GroupAlgElem(3, {Perm(p): i + 1 for i, p in enumerate(permutations((1, 2, 3)))}),
             ga_transposition(1, 2, 3) + ga_transposition(2, 3, 3).scale(3),
             GroupAlgElem.of(Perm([3, 1, 2]), -2)]
    a, b, c = elems
    assert (a * b) * c == a * (b * c)
