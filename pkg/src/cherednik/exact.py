"""Exact scalars, sparse Laurent polynomials and difference-denominator fractions.

Scalars are :class:`fractions.Fraction`.  A Laurent polynomial in ``x_1..x_N``
is a map from integer exponent tuples to nonzero fractions.  A
:class:`DiffFrac` is a Laurent polynomial divided by a product of difference
factors ``(x_p - x_r)`` with ``p < r``.

Variable indices in the public API are 1-based; exponent tuples are 0-based.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Tuple, Union

Exp = Tuple[int, ...]
Scalar = Union[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (ints and Fractions pass through)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip().replace("−", "-"))
    raise TypeError(f"not a rational literal: {text!r}")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


class DimensionError(ValueError):
    pass


# -- monomial helpers (shared by every operator on x-parts) --------------------

def unit_exp(n: int, p: int, k: int = 1) -> Exp:
    e = [0] * n
    e[p - 1] = k
    return tuple(e)


def add_exp(e: Exp, f: Exp) -> Exp:
    return tuple(a + b for a, b in zip(e, f))


def shift_exp(e: Exp, p: int, k: int) -> Exp:
    """Exponent of ``x_p^k * x^e``."""
    lst = list(e)
    lst[p - 1] += k
    return tuple(lst)


def swap_exp(e: Exp, p: int, r: int) -> Exp:
    lst = list(e)
    lst[p - 1], lst[r - 1] = lst[r - 1], lst[p - 1]
    return tuple(lst)


def monomial_divided_difference(e: Exp, p: int, r: int) -> List[Tuple[Exp, int]]:
    """Terms of ``(x^e - s_pr x^e) / (x_p - x_r)`` as ``(exponent, coeff)``.

    For ``a = e_p``, ``b = e_r`` and ``a > b`` this is
    ``x_p^b x_r^b * sum_{k=0}^{a-b-1} x_p^k x_r^{a-b-1-k}``; the case ``a < b``
    follows by antisymmetry.  Works for negative exponents.
    """
    a, b = e[p - 1], e[r - 1]
    if a == b:
        return []
    sign = 1
    if a < b:
        a, b, sign = b, a, -1
    out = []
    base = list(e)
    for k in range(a - b):
        base[p - 1] = b + k
        base[r - 1] = a - 1 - k
        out.append((tuple(base), sign))
    return out


# -- Laurent polynomials ------------------------------------------------------

class LaurentPoly:
    """Immutable sparse Laurent polynomial over the rationals."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Dict[Exp, Fraction] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise DimensionError(f"exponent {e} has length != {nvars}")
                if c:
                    clean[tuple(e)] = Fraction(c)
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exp, Fraction]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c: Scalar = 1) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def monomial(cls, exp: Iterable[int], c: Scalar = 1) -> "LaurentPoly":
        exp = tuple(exp)
        return cls(len(exp), {exp: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, p: int, k: int = 1) -> "LaurentPoly":
        return cls._raw(nvars, {unit_exp(nvars, p, k): ONE})

    @classmethod
    def difference(cls, nvars: int, p: int, r: int) -> "LaurentPoly":
        """``x_p - x_r``."""
        return cls._raw(nvars, {unit_exp(nvars, p): ONE, unit_exp(nvars, r): -ONE})

    # basic protocol
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __iter__(self) -> Iterator[Tuple[Exp, Fraction]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(f"x{i + 1}^{k}" if k != 1 else f"x{i + 1}"
                            for i, k in enumerate(e) if k)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(self.nvars, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly.zero(self.nvars)
        return LaurentPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = add_exp(e1, e2)
                v = out.get(e, ZERO) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.nvars, {tuple(a * k for a in e): c ** k})
        out = LaurentPoly.const(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, exp: Exp) -> "LaurentPoly":
        """Multiply by the monomial ``x^exp``."""
        return LaurentPoly._raw(self.nvars, {add_exp(e, exp): c for e, c in self.terms.items()})

    # structure
    def perm(self, s) -> "LaurentPoly":
        """Apply the variable permutation ``x_i -> x_{s(i)}``."""
        if len(s) != self.nvars:
            raise DimensionError("permutation size differs from nvars")
        return LaurentPoly._raw(self.nvars, {s.act_on_tuple(e): c for e, c in self.terms.items()})

    def swap(self, p: int, r: int) -> "LaurentPoly":
        return LaurentPoly._raw(self.nvars, {swap_exp(e, p, r): c for e, c in self.terms.items()})

    def partial(self, p: int) -> "LaurentPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[p - 1]
            if k:
                out[shift_exp(e, p, -1)] = c * k
        return LaurentPoly._raw(self.nvars, out)

    def divided_difference(self, p: int, r: int) -> "LaurentPoly":
        return divided_difference(p, r, self)

    def substitute_equal(self, p: int, r: int) -> "LaurentPoly":
        """Set ``x_p := x_r``."""
        out: Dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            lst = list(e)
            lst[r - 1] += lst[p - 1]
            lst[p - 1] = 0
            f = tuple(lst)
            v = out.get(f, ZERO) + c
            if v:
                out[f] = v
            else:
                out.pop(f, None)
        return LaurentPoly._raw(self.nvars, out)

    def total_degree_range(self) -> Tuple[int, int]:
        degs = [sum(e) for e in self.terms]
        return (min(degs), max(degs)) if degs else (0, 0)


def laurent_arith(op: str, a: LaurentPoly, b) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def divided_difference(p: int, r: int, a: LaurentPoly) -> LaurentPoly:
    """``(a - s_pr a) / (x_p - x_r)``, always a Laurent polynomial."""
    if p == r:
        raise ValueError("divided difference needs p != r")
    out: Dict[Exp, Fraction] = {}
    for e, c in a.terms.items():
        for f, s in monomial_divided_difference(e, p, r):
            v = out.get(f, ZERO) + c * s
            if v:
                out[f] = v
            else:
                out.pop(f, None)
    return LaurentPoly._raw(a.nvars, out)


def divide_by_difference(a: LaurentPoly, p: int, r: int) -> LaurentPoly | None:
    """Exact quotient of ``a`` by ``(x_p - x_r)``, or None if it does not divide.

    Synthetic division in ``x_p`` with the root ``x_r``; coefficients are
    Laurent polynomials in the remaining variables.
    """
    if a.is_zero():
        return a
    n = a.nvars
    by_k: Dict[int, Dict[Exp, Fraction]] = {}
    for e, c in a.terms.items():
        k = e[p - 1]
        rest = list(e)
        rest[p - 1] = 0
        by_k.setdefault(k, {})[tuple(rest)] = c
    lo, hi = min(by_k), max(by_k)
    if lo == hi:
        return None
    deg = hi - lo
    coeffs = [by_k.get(lo + j, {}) for j in range(deg + 1)]

    def times_xr(d):
        return {shift_exp(e, r, 1): c for e, c in d.items()}

    def plus(d1, d2):
        out = dict(d1)
        for e, c in d2.items():
            v = out.get(e, ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return out

    b = [None] * deg
    b[deg - 1] = coeffs[deg]
    for j in range(deg - 1, 0, -1):
        b[j - 1] = plus(coeffs[j], times_xr(b[j]))
    if plus(coeffs[0], times_xr(b[0])):
        return None
    out: Dict[Exp, Fraction] = {}
    for j, d in enumerate(b):
        for e, c in d.items():
            out[shift_exp(e, p, lo + j)] = c
    return LaurentPoly._raw(n, out)


# -- fractions with difference denominators -----------------------------------

Denom = Tuple[Tuple[Tuple[int, int], int], ...]


def _norm_pair(p: int, r: int) -> Tuple[Tuple[int, int], int]:
    """Return the ordered pair for ``x_p - x_r`` and the sign to absorb."""
    if p == r:
        raise ValueError("difference factor needs p != r")
    return ((p, r), 1) if p < r else ((r, p), -1)


class DiffFrac:
    """``num / prod (x_p - x_r)^e`` with ``p < r``.  No canonical form is kept."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: Dict[Tuple[int, int], int] | Denom = ()):
        self.num = num
        items = den.items() if isinstance(den, dict) else den
        clean = {}
        for (p, r), k in items:
            if not p < r:
                raise ValueError(f"denominator pair {(p, r)} must satisfy p < r")
            if k:
                clean[(p, r)] = clean.get((p, r), 0) + k
        self.den: Denom = tuple(sorted(clean.items()))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_poly(cls, a: LaurentPoly) -> "DiffFrac":
        return cls(a)

    @classmethod
    def const(cls, nvars: int, c: Scalar = 1) -> "DiffFrac":
        return cls(LaurentPoly.const(nvars, c))

    @classmethod
    def zero(cls, nvars: int) -> "DiffFrac":
        return cls(LaurentPoly.zero(nvars))

    @classmethod
    def inverse_difference(cls, nvars: int, p: int, r: int) -> "DiffFrac":
        """``1 / (x_p - x_r)``."""
        pair, sign = _norm_pair(p, r)
        return cls(LaurentPoly.const(nvars, sign), {pair: 1})

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self):
        if not self.den:
            return f"DiffFrac({self.num!r})"
        d = "*".join(f"(x{p}-x{r})^{k}" for (p, r), k in self.den)
        return f"DiffFrac(({self.num!r}) / {d})"

    def _denominator_poly(self, pairs) -> LaurentPoly:
        out = LaurentPoly.const(self.nvars)
        for (p, r), k in pairs:
            for _ in range(k):
                out = out * LaurentPoly.difference(self.nvars, p, r)
        return out

    def _lift(self, target: Dict[Tuple[int, int], int]) -> LaurentPoly:
        own = dict(self.den)
        extra = [(pr, k - own.get(pr, 0)) for pr, k in target.items() if k > own.get(pr, 0)]
        return self.num * self._denominator_poly(extra) if extra else self.num

    def __add__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return DiffFrac(self.num + other.num, self.den)
        lcd = dict(self.den)
        for pr, k in other.den:
            lcd[pr] = max(lcd.get(pr, 0), k)
        return DiffFrac(self._lift(lcd) + other._lift(lcd), lcd)

    __radd__ = __add__

    def __neg__(self):
        return DiffFrac(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, other) -> "DiffFrac":
        if isinstance(other, DiffFrac):
            if other.nvars != self.nvars:
                raise DimensionError("nvars mismatch")
            return other
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise DimensionError("nvars mismatch")
            return DiffFrac(other)
        if isinstance(other, (int, Fraction)):
            return DiffFrac.const(self.nvars, other)
        raise TypeError(f"cannot combine DiffFrac with {type(other).__name__}")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DiffFrac(self.num.scale(other), self.den)
        other = self._coerce(other)
        den = dict(self.den)
        for pr, k in other.den:
            den[pr] = den.get(pr, 0) + k
        return DiffFrac(self.num * other.num, den)

    __rmul__ = __mul__

    def mul_by_inverse_difference(self, p: int, r: int) -> "DiffFrac":
        pair, sign = _norm_pair(p, r)
        den = dict(self.den)
        den[pair] = den.get(pair, 0) + 1
        num = self.num if sign > 0 else -self.num
        return DiffFrac(num, den)

    def perm(self, s) -> "DiffFrac":
        num = self.num.perm(s)
        den = {}
        flips = 0
        for (p, r), k in self.den:
            pair, sign = _norm_pair(s(p), s(r))
            den[pair] = den.get(pair, 0) + k
            if sign < 0:
                flips += k
        return DiffFrac(-num if flips % 2 else num, den)

    def swap(self, p: int, r: int) -> "DiffFrac":
        from .symgroup import transposition
        return self.perm(transposition(p, r, self.nvars))

    def partial(self, p: int) -> "DiffFrac":
        """Quotient rule; only factors involving ``x_p`` gain a power."""
        n = self.nvars
        moving = [(pr, k) for pr, k in self.den if p in pr]
        if not moving:
            return DiffFrac(self.num.partial(p), self.den)
        facs = {pr: LaurentPoly.difference(n, *pr) for pr, _ in moving}
        prod_all = LaurentPoly.const(n)
        for f in facs.values():
            prod_all = prod_all * f
        num = self.num.partial(p) * prod_all
        for pr, k in moving:
            deriv = 1 if pr[0] == p else -1
            others = LaurentPoly.const(n)
            for qr, f in facs.items():
                if qr != pr:
                    others = others * f
            num = num - self.num * others.scale(k * deriv)
        den = dict(self.den)
        for pr, _ in moving:
            den[pr] += 1
        return DiffFrac(num, den)

    def reduce(self) -> "DiffFrac":
        """Cancel difference factors that divide the numerator."""
        num = self.num
        if num.is_zero():
            return DiffFrac(num)
        den = dict(self.den)
        for pr in list(den):
            while den[pr]:
                q = divide_by_difference(num, *pr)
                if q is None:
                    break
                num = q
                den[pr] -= 1
        return DiffFrac(num, den)

    def as_laurent(self) -> LaurentPoly | None:
        red = self.reduce()
        return red.num if not red.den else None

    def __eq__(self, other):
        if not isinstance(other, (DiffFrac, LaurentPoly, int, Fraction)):
            return NotImplemented
        return frac_eq(self, self._coerce(other))

    __hash__ = None


def frac_eq(a: DiffFrac, b: DiffFrac) -> bool:
    """Equality by cross-multiplication to the least common denominator."""
    return (a - b).num.is_zero()


def frac_arith(op: str, *operands):
    """Dispatch for the named fraction operations."""
    if op == "add":
        return operands[0] + operands[1]
    if op == "mul":
        return operands[0] * operands[1]
    if op == "perm":
        return operands[0].perm(operands[1])
    if op == "partial":
        return operands[0].partial(operands[1])
    if op == "mul_by_inverse_difference":
        return operands[0].mul_by_inverse_difference(operands[1], operands[2])
    raise ValueError(f"unknown op {op!r}")
