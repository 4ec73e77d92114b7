from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cherednik.affine import induce_affine
from cherednik.glmod import make_natural, make_onedim, tensor
from cherednik.linops import commutator, vclean
from cherednik.wspace import (LevelError, WSpace, commutator_formula_check, ext_to_w,
                              j_element, j_element_check, j_element_q_coordinates,
                              lemma_suite_31_35, lift_independence_check, prop15_suite,
                              theta_representation_check)

KAPPAS = [Fraction(1), Fraction(5, 2), Fraction(-7, 3)]
U = make_natural(2)


def wspace(kappa, n=2, flavor="gl", level=Fraction(1, 3), corrected=None, base=U):
    return WSpace(induce_affine(base, level, flavor), n, kappa, corrected)


def test_x_operators():
    W = wspace(1)
    key = ((0, 0), (1, 2), ((), 0))
    assert W.X(1)(key) == {((1, 0), (1, 2), ((), 0)): 1}
    assert (W.X(1) @ W.X_inv(1))(key) == {key: 1}
    assert commutator(W.X(1), W.X(2))(key) == {}


def test_cherednik_operator_on_constant_keys():
    # only the i = 0 term survives: the sl-corrected Hecke action on the finite part
    W = wspace(Fraction(5, 2), n=1, flavor="sl")
    key = ((0,), (1,), ((), 1))
    assert W.cherednik(1)(key) == {((0,), (2,), ((), 0)): 1, key: Fraction(-1, 2)}
    assert W.Y(1)(key) == {((-1,), (2,), ((), 0)): 1, ((-1,), (1,), ((), 1)): Fraction(-1, 2)}


def test_sl_module_needs_corrected_operators():
    with pytest.raises(ValueError):
        wspace(1, flavor="sl", corrected=False)


@pytest.mark.parametrize("kappa", KAPPAS)
@pytest.mark.parametrize("flavor", ["gl", "sl"])
def test_xy_sigma_relations_small(kappa, flavor):
    W = wspace(kappa, flavor=flavor)
    keys = list(W.window(-1, 1, 1).keys())
    rep = prop15_suite(W, keys)
    assert rep.passed, rep.summary()


def test_xy_sigma_relations_three_factors():
    W = wspace(Fraction(5, 2), n=3, flavor="sl")
    rep = prop15_suite(W, W.sample(-1, 1, 1, 25, seed=3))
    assert rep.passed, rep.summary()


def test_lift_independence():
    W = wspace(Fraction(5, 2), flavor="sl")
    other = wspace(Fraction(5, 2), flavor="sl", base=tensor(U, make_onedim(2, [Fraction(3, 2)] * 2)))
    keys = W.sample(-2, 2, 2, 60, seed=1)
    assert lift_independence_check(W, other, keys).passed
    # without the correction the eigenvalue of I shows up
    a = wspace(Fraction(5, 2))
    b = wspace(Fraction(5, 2), base=tensor(U, make_onedim(2, [Fraction(3, 2)] * 2)))
    assert not lift_independence_check(a, b, keys).passed


def test_theta_representation():
    W = wspace(Fraction(-7, 3), flavor="sl")
    assert theta_representation_check(W, W.sample(-1, 1, 1, 12, seed=2), -1, 1).passed


@pytest.mark.parametrize("flavor", ["gl", "sl"])
def test_extended_operator_identities(flavor):
    W = wspace(Fraction(5, 2), flavor=flavor)
    rep = lemma_suite_31_35(W, W.sample(-1, 1, 1, 40, seed=0))
    assert rep.passed, rep.summary()


@settings(max_examples=25, deadline=None)
@given(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.tuples(st.integers(1, 2), st.integers(1, 2)),
       st.integers(0, 20), st.sampled_from(KAPPAS), st.integers(1, 2))
def test_y_equals_extended_combination(e, w, midx, kappa, p):
    W = wspace(kappa, flavor="sl")
    mk = W.module.keys(2)[midx]
    key = (e, w, mk)
    D, R, T = W.ext_DRT(p)
    out = ext_to_w((D.scale(kappa) - R + T)(W.embed(key)))
    assert out is not None
    assert vclean(out) == vclean(W.Y(p)(key))


@settings(max_examples=25, deadline=None)
@given(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.tuples(st.integers(1, 2), st.integers(1, 2)),
       st.integers(0, 35), st.sampled_from(KAPPAS))
def test_y_operators_commute(e, w, midx, kappa):
    W = wspace(kappa)
    key = (e, w, W.module.keys(2)[midx])
    assert vclean(commutator(W.Y(1), W.Y(2))(key)) == {}


def test_j_element():
    J = j_element(2, -1, 1, 2)
    assert J == {((1, 2, -1), (1, 1, -1)): 1, ((2, 2, -1), (1, 2, -1)): 1,
                 ((1, 1, -1), (1, 2, -1)): -1, ((1, 2, -1), (2, 2, -1)): -1}
    coords = j_element_q_coordinates(2, -1, 1, 2)
    assert coords and not any(k[0][1:] == (2, 2) or k[1][1:] == (2, 2) for k in coords)


@pytest.mark.parametrize("corrected", [False, True])
@pytest.mark.parametrize("j", [-1, -2])
def test_closed_forms_for_negative_modes(corrected, j):
    kappa = Fraction(5, 2)
    W = wspace(kappa, level=kappa - 2, corrected=corrected)
    keys = W.sample(-1, 1, 1, 30, seed=0)
    for c in (1, 2):
        for d in (1, 2):
            assert commutator_formula_check(W, j, c, d, keys).passed
            assert j_element_check(W, j, c, d, keys).passed


def test_closed_forms_need_the_critical_level():
    kappa = Fraction(5, 2)
    bad = wspace(kappa, level=kappa - 1)
    keys = bad.sample(-1, 1, 1, 30, seed=0)
    with pytest.raises(LevelError):
        commutator_formula_check(bad, -1, 1, 2, keys)
    assert not all(commutator_formula_check(bad, -1, c, d, keys, check_level=False).passed
                   for c in (1, 2) for d in (1, 2))
