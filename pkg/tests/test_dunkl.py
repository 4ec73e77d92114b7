from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cherednik.dunkl import (CherednikParams, dunkl_y, embedding_check, rational_relation_suite,
                            trig_relation_suite, trig_u, trig_z, x_op)
from cherednik.linops import commutator

KAPPAS = [Fraction(1), Fraction(5, 2), Fraction(-7, 3)]
X = sympy.symbols("x1:4")


def e(*exps):
    return tuple(exps)


def poly_to_sympy(vec):
    out = sympy.Integer(0)
    for exp, c in vec.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for v, k in zip(X, exp):
            term *= v ** k
        out += term
    return sympy.expand(out)


def sympy_dunkl(f, n, p, kappa, trig):
    xp = X[p - 1]
    k = sympy.Rational(kappa.numerator, kappa.denominator)
    out = k * sympy.diff(f, xp)
    for r in range(1, n + 1):
        if r != p:
            xr = X[r - 1]
            out += (f - f.subs({xp: xr, xr: xp}, simultaneous=True)) / (xp - xr)
    if trig:
        out *= xp
    return sympy.cancel(out)


@pytest.mark.parametrize("kappa", KAPPAS)
def test_dunkl_examples(kappa):
    for n in (2, 3):
        y1 = dunkl_y(CherednikParams(n, kappa), 1)
        assert y1((0,) * n) == {}
        assert y1(e(1, *([0] * (n - 1)))) == {(0,) * n: kappa + n - 1}
    y1 = dunkl_y(CherednikParams(2, kappa), 1)
    assert y1(e(0, 1)) == {e(0, 0): -1}
    one = e(0, 0)
    assert commutator(y1, x_op(2, 1))(one) == {one: kappa + 1}


@pytest.mark.parametrize("kappa", KAPPAS)
def test_trig_examples(kappa):
    P = CherednikParams(2, kappa)
    z1, z2, u2 = trig_z(P, 1), trig_z(P, 2), trig_u(P, 2)
    assert z1(e(0, 0)) == {}
    assert z1(e(0, 1)) == {e(1, 0): -1}
    assert z1(e(1, 0)) == {e(1, 0): kappa + 1}
    # cross-check against [z_1, x_1] applied to 1
    assert commutator(z1, x_op(2, 1))(e(0, 0)) == z1(e(1, 0))
    assert trig_u(P, 1)(e(2, -1)) == z1(e(2, -1))
    expected = z2(e(1, 0))
    expected[e(0, 1)] = expected.get(e(0, 1), 0) + 1
    assert u2(e(1, 0)) == {k: v for k, v in expected.items() if v}
    for p in (1, 2, 3):
        assert trig_u(CherednikParams(3, kappa), p)(e(0, 0, 0)) == ({e(0, 0, 0): p - 1} if p > 1 else {})


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)),
       st.sampled_from(KAPPAS), st.integers(1, 3))
def test_dunkl_matches_sympy(exp, kappa, p):
    f = poly_to_sympy({exp: 1})
    got = poly_to_sympy(dunkl_y(CherednikParams(3, kappa), p)(exp))
    assert sympy.expand(got - sympy_dunkl(f, 3, p, kappa, trig=False)) == 0


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
       st.sampled_from(KAPPAS), st.integers(1, 3))
def test_trig_z_matches_sympy(exp, kappa, p):
    f = poly_to_sympy({exp: 1})
    got = poly_to_sympy(trig_z(CherednikParams(3, kappa), p)(exp))
    assert sympy.simplify(got - sympy_dunkl(f, 3, p, kappa, trig=True)) == 0


@pytest.mark.parametrize("kappa", KAPPAS)
@pytest.mark.parametrize("n,degree", [(2, 5), (3, 4)])
def test_rational_suite(n, degree, kappa):
    rep = rational_relation_suite(CherednikParams(n, kappa), degree)
    assert rep.passed, rep.summary()


@pytest.mark.parametrize("kappa", KAPPAS)
@pytest.mark.parametrize("n,lo,hi", [(2, -3, 3), (3, -2, 2)])
def test_trig_suite(n, lo, hi, kappa):
    rep = trig_relation_suite(CherednikParams(n, kappa), lo, hi)
    assert rep.passed, rep.summary()


@pytest.mark.parametrize("n,kappa", [(2, 1), (3, Fraction(5, 2))])
def test_embedding(n, kappa):
    rep = embedding_check(CherednikParams(n, kappa))
    assert rep.passed, rep.summary()
    # x_p y_p kills constants, like z_p under the evaluation map
    P = CherednikParams(n, kappa)
    assert (x_op(n, 1) @ dunkl_y(P, 1))((0,) * n) == {}


def test_suite_detects_a_wrong_operator(monkeypatch):
    import cherednik.dunkl as dunkl
    original = dunkl.dunkl_y

    def shifted(params, p):
        # y_1 + 1 breaks σ y_1 σ^-1 = y_2
        op = original(params, p)
        return op + x_op(params.n, p, 0) if p == 1 else op
    monkeypatch.setattr(dunkl, "dunkl_y", shifted)
    assert not rational_relation_suite(CherednikParams(2, 1), 2).passed
