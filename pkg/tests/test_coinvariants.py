from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cherednik.affine import induce_affine, q_basis, qkey_lie
from cherednik.coinvariants import (AffineReducer, FiniteSide, build_bimodule_125, build_tn_module,
                                    check_qw_preservation, check_thm_17, check_thm_125, nf_affine,
                                    nf_finite, push_u, tn_relation_suite)
from cherednik.glmod import make_natural, make_onedim
from cherednik.hecke import fn_z, hecke_relation_suite
from cherednik.linops import vclean
from cherednik.symgroup import Perm, all_perms
from cherednik.wspace import LevelError, WSpace

U = make_natural(2)
E12_T_INV = (1, 1, 2)  # q-key of E_12 t^{-1}


def test_nf_affine_examples():
    V = induce_affine(U, Fraction(1, 2), "sl")
    red = AffineReducer(V, 1)
    for u in (0, 1):
        assert nf_affine(red, {((0,), (1,), ((E12_T_INV,), u)): 1}) == {}
        assert nf_affine(red, {((0,), (2,), ((E12_T_INV,), u)): 1}) == {((-1,), (1,), ((), u)): -1}
        base = ((3,), (2,), ((), u))
        assert nf_affine(red, {base: 1}) == {base: 1}


def test_nf_finite_examples():
    side = FiniteSide(make_onedim(1, [2]), make_onedim(1, [-1]), 1)
    assert nf_finite(side, {((1,), (((2, 1),), (0, 0))): 1}) == {((2,), ((), (0, 0))): -1}
    assert nf_finite(side, {((2,), (((2, 1),), (0, 0))): 1}) == {}
    assert nf_finite(side, {((1,), ((), (0, 0))): 1}) == {((1,), ((), (0, 0))): 1}


def test_bimodule_dimension_and_blocks():
    Uo, Vo = make_onedim(1, [2]), make_onedim(1, [-1])
    model = build_bimodule_125(Uo, Vo, 1, 1, 2)
    keys = list(model.keys())
    assert len(keys) == 4
    # K = 0 block: word (2, 2), u_1 is -m plus the V-part
    key = (Perm.identity(2), (2, 2), (0, 0))
    assert model.u(1)(key) == {key: Fraction(-1 - 1)}
    # K = N block: u_1 acts through U only
    key = (Perm.identity(2), (1, 1), (0, 0))
    assert model.u(1)(key) == {key: 2}
    with pytest.raises(ValueError):
        build_bimodule_125(Uo, Vo, 2, 1, 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_push_u_against_group_algebra(n):
    # u_p s = Σ g u_q + Σ g must be consistent with the action on the trivial block
    for s in all_perms(n):
        for p in range(1, n + 1):
            terms = push_u(p, s)
            assert sum(1 for _, q, _ in terms if q is not None) == 1
            g, q, c = next(t for t in terms if t[1] is not None)
            assert g == s and q == s.inverse()(p) and c == 1


@pytest.mark.parametrize("U_,V_,m,n", [
    (make_onedim(1, [2]), make_onedim(1, [-1]), 1, 1),
    (make_natural(2), make_onedim(1, [Fraction(1, 2)]), 2, 1),
    (make_natural(2), make_natural(2), 2, 2)])
def test_finite_coinvariants(U_, V_, m, n):
    rep = check_thm_125(U_, V_, m, n, 2)
    assert rep.passed, rep.summary()
    assert rep.counts["upper bound p breaks u-equivariance"] == 1


def test_bimodule_is_a_hecke_module_for_three_factors():
    model = build_bimodule_125(make_onedim(1, [3]), make_onedim(1, [Fraction(-1, 2)]), 1, 1, 3)
    assert hecke_relation_suite(model, list(model.keys())).passed


def test_tn_module_examples():
    kappa = Fraction(5, 2)
    tn = build_tn_module(U, 2, kappa)
    fz = fn_z(U, 2, 1)
    for w, j in product(product((1, 2), repeat=2), range(2)):
        key = ((0, 0), w, j)
        assert tn.z(1)(key) == {((0, 0), w2, j2): c for (w2, j2), c in fz((w, j)).items()}
        key = ((0, 1), w, j)
        expected = {((0, 1), w2, j2): c for (w2, j2), c in fz((w, j)).items()}
        w_swapped = (w[1], w[0])
        expected[((1, 0), w_swapped, j)] = expected.get(((1, 0), w_swapped, j), 0) - 1
        assert vclean(tn.z(1)(key)) == vclean(expected)
        assert (tn.X(1) @ tn.X(1, -1))(key) == {key: 1}


@pytest.mark.parametrize("kappa", [1, Fraction(5, 2)])
def test_tn_relations(kappa):
    tn = build_tn_module(U, 2, kappa)
    assert tn_relation_suite(tn, list(tn.keys(-1, 1))).passed


@pytest.mark.parametrize("kappa", [1, Fraction(5, 2)])
@pytest.mark.parametrize("n", [1, 2])
def test_affine_coinvariants_small(kappa, n):
    rep = check_thm_17(U, n, kappa, -1, 1, 1, samples=40, seed=0)
    assert rep.passed, rep.summary()


def test_affine_coinvariants_level_control():
    with pytest.raises(LevelError):
        check_thm_17(U, 1, 1, level_offset=1)
    rep = check_thm_17(U, 1, Fraction(5, 2), -1, 1, 1, samples=40, level_offset=1, strict=False)
    assert not rep.passed


@pytest.mark.parametrize("flavor", ["gl", "sl"])
def test_qw_preservation_small(flavor):
    kappa = Fraction(5, 2)
    W = WSpace(induce_affine(U, kappa - 2, flavor), 2, kappa)
    rep = check_qw_preservation(W, W.sample(-1, 1, 1, 30, seed=0), q_depth=1)
    assert rep.passed, rep.summary()
    with pytest.raises(LevelError):
        check_qw_preservation(WSpace(induce_affine(U, kappa, flavor), 2, kappa), [])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(q_basis("sl", 2, 2)), st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
       st.tuples(st.integers(1, 2), st.integers(1, 2)), st.integers(0, 25),
       st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_images_of_q_reduce_to_zero(P, e, w, midx, level):
    V = induce_affine(U, level, "sl")
    W = WSpace(V, 2, 1)
    red = AffineReducer(V, 2)
    key = (e, w, V.keys(2)[midx])
    image = W.theta({(a, b, j): c for (a, b, j), c in qkey_lie(P, 2).items()})(key)
    assert vclean(red.nf(image, "leftmost")) == {}
    assert vclean(red.nf(image, "rightmost")) == {}
    nf = red.nf({key: 1})
    assert all(red.is_normal(k) for k in nf)
    assert red.nf(nf) == nf
