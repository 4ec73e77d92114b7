from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cherednik.exact import (DiffFrac, DimensionError, LaurentPoly, divide_by_difference,
                             divided_difference, frac_arith, frac_eq, laurent_arith,
                             parse_rational)
from cherednik.symgroup import Perm, transposition

X = sympy.symbols("x1:4")


def x(n, p, k=1):
    return LaurentPoly.var(n, p, k)


def to_sympy(a: LaurentPoly):
    out = sympy.Integer(0)
    for e, c in a:
        term = sympy.Rational(c.numerator, c.denominator)
        for v, k in zip(X, e):
            term *= v ** k
        out += term
    return sympy.expand(out)


def frac_to_sympy(f: DiffFrac):
    den = sympy.Integer(1)
    for (p, r), k in f.den:
        den *= (X[p - 1] - X[r - 1]) ** k
    return to_sympy(f.num) / den


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def laurent(draw, n=3, lo=-2, hi=3, max_terms=4):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(lo, hi)] * n), rationals, max_size=max_terms))
    return LaurentPoly(n, terms)


# -- examples ---------------------------------------------------------------------

def test_difference_of_squares():
    a = x(2, 1) - x(2, 2)
    b = x(2, 1) + x(2, 2)
    assert laurent_arith("mul", a, b) == x(2, 1) ** 2 - x(2, 2) ** 2


def test_add_cancels_to_empty_map():
    s = laurent_arith("add", x(2, 1), -x(2, 1))
    assert s.is_zero() and len(s) == 0


def test_scale_negative_power():
    assert laurent_arith("scale", x(1, 1, -3), Fraction(2, 5)) == LaurentPoly.monomial((-3,), Fraction(2, 5))


def test_mismatched_nvars():
    with pytest.raises(DimensionError):
        x(2, 1) + x(3, 1)


def test_perm_action():
    s12 = transposition(1, 2, 2)
    assert (x(2, 1) ** 2 * x(2, 2)).perm(s12) == x(2, 1) * x(2, 2) ** 2
    f = x(2, 1) - x(2, 2)
    assert f.perm(Perm.identity(2)) == f
    assert f.perm(s12) == -f


def test_partial():
    assert (x(2, 1) ** 2 * x(2, 2)).partial(1) == x(2, 1) * x(2, 2) * 2
    assert x(2, 2).partial(1).is_zero()
    assert x(1, 1, -1).partial(1) == -x(1, 1, -2)


def test_divided_difference_examples():
    assert divided_difference(1, 2, x(2, 1)) == LaurentPoly.const(2, 1)
    assert divided_difference(1, 2, x(2, 1) ** 2) == x(2, 1) + x(2, 2)
    sym = x(3, 1) * x(3, 2) + x(3, 3, -1)
    assert divided_difference(1, 2, sym).is_zero()


def test_divided_difference_rejects_equal_indices():
    with pytest.raises(ValueError):
        divided_difference(1, 1, x(2, 1))


def test_difffrac_examples():
    f = DiffFrac(x(2, 1)).mul_by_inverse_difference(1, 2)
    expected = DiffFrac(-x(2, 2)).mul_by_inverse_difference(1, 2)
    assert frac_arith("perm", f, transposition(1, 2, 2)) == expected
    a = DiffFrac.inverse_difference(2, 1, 2)
    b = DiffFrac.inverse_difference(2, 2, 1)
    assert (a + b).is_zero()
    d = a.partial(1)
    assert d == DiffFrac.const(2, -1).mul_by_inverse_difference(1, 2).mul_by_inverse_difference(1, 2)


def test_frac_eq_examples():
    lhs = DiffFrac(x(3, 1)).mul_by_inverse_difference(1, 2)
    rhs = DiffFrac(x(3, 1) * (x(3, 1) - x(3, 3))).mul_by_inverse_difference(1, 2) \
        .mul_by_inverse_difference(1, 3)
    assert frac_eq(lhs, rhs)
    assert not frac_eq(DiffFrac.inverse_difference(3, 1, 2), DiffFrac.inverse_difference(3, 1, 3))
    zero = DiffFrac(LaurentPoly.zero(3)).mul_by_inverse_difference(2, 3)
    assert frac_eq(zero, DiffFrac.from_poly(LaurentPoly.zero(3)))


def test_reduce_clears_common_factors():
    f = DiffFrac(x(2, 1) - x(2, 2)).mul_by_inverse_difference(1, 2)
    assert f.as_laurent() == LaurentPoly.const(2, 1)
    assert DiffFrac.inverse_difference(2, 1, 2).as_laurent() is None


def test_parse_rational():
    assert parse_rational("−7/3") == Fraction(-7, 3)
    assert parse_rational("5/2") == Fraction(5, 2)
    with pytest.raises(ValueError):
        parse_rational("1/0x")


# -- properties against sympy -------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(laurent(), laurent())
def test_ring_operations_match_sympy(a, b):
    assert to_sympy(a + b) == sympy.expand(to_sympy(a) + to_sympy(b))
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


@settings(max_examples=60, deadline=None)
@given(laurent(), st.sampled_from([(1, 2), (2, 1), (1, 3), (2, 3)]))
def test_divided_difference_matches_sympy(a, pr):
    p, r = pr
    xp, xr = X[p - 1], X[r - 1]
    f = to_sympy(a)
    swapped = f.subs({xp: xr, xr: xp}, simultaneous=True)
    expected = sympy.cancel((f - swapped) / (xp - xr))
    assert sympy.simplify(to_sympy(divided_difference(p, r, a)) - expected) == 0


@settings(max_examples=60, deadline=None)
@given(laurent(), st.sampled_from([(1, 2), (1, 3), (3, 2)]))
def test_exact_division_round_trip(a, pr):
    p, r = pr
    diff = x(3, p) - x(3, r)
    assert divide_by_difference(a * diff, p, r) == a


@settings(max_examples=40, deadline=None)
@given(laurent(lo=0, hi=2, max_terms=3), laurent(lo=0, hi=2, max_terms=3),
       st.sampled_from([(1, 2), (1, 3), (2, 3)]), st.sampled_from([(1, 2), (1, 3), (2, 3)]))
def test_fraction_arithmetic_matches_sympy(a, b, d1, d2):
    f = DiffFrac(a).mul_by_inverse_difference(*d1)
    g = DiffFrac(b).mul_by_inverse_difference(*d2)
    for got, want in ((f + g, frac_to_sympy(f) + frac_to_sympy(g)),
                      (f * g, frac_to_sympy(f) * frac_to_sympy(g)),
                      (f.partial(1), sympy.diff(frac_to_sympy(f), X[0])),
                      (f.swap(1, 3), frac_to_sympy(f).subs({X[0]: X[2], X[2]: X[0]}, simultaneous=True))):
        assert sympy.simplify(frac_to_sympy(got) - want) == 0
