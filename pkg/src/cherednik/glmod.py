"""Finite-dimensional gl_m-modules given by explicit matrices.

A module stores one ``dim x dim`` rational matrix per matrix unit ``E_ab``
(indices 1-based).  Construction validates every bracket relation
``[E_ab, E_cd] = δ_bc E_ad - δ_da E_cb``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Tuple

from .exact import DiffFrac, parse_rational
from .linops import CheckReport

Matrix = Tuple[Tuple[Fraction, ...], ...]


class ModuleValidationError(ValueError):
    def __init__(self, indices, message):
        super().__init__(message)
        self.indices = indices


def _zero(dim: int) -> List[List[Fraction]]:
    return [[Fraction(0)] * dim for _ in range(dim)]


def _freeze(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    k = len(b[0]) if b else 0
    out = _zero(n)
    for i in range(n):
        ai = a[i]
        for j in range(len(ai)):
            if ai[j]:
                bj = b[j]
                for l in range(k):
                    if bj[l]:
                        out[i][l] += ai[j] * bj[l]
    return _freeze(out)


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def elementary(dim: int, i: int, j: int) -> Matrix:
    rows = _zero(dim)
    rows[i][j] = Fraction(1)
    return _freeze(rows)


class GlModule:
    """A gl_m-module: ``action[(a, b)]`` is the matrix of ``E_ab``."""

    def __init__(self, m: int, dim: int, action: Dict[Tuple[int, int], Sequence[Sequence]],
                 name: str = "U", check: bool = True):
        self.m, self.dim, self.name = m, dim, name
        self.action: Dict[Tuple[int, int], Matrix] = {}
        for a, b in product(range(1, m + 1), repeat=2):
            mat = _freeze(action[(a, b)])
            if len(mat) != dim or any(len(r) != dim for r in mat):
                raise ValueError(f"matrix of E_{a}{b} is not {dim}x{dim}")
            self.action[(a, b)] = mat
        # sparse columns: cols[(a, b)][j] = [(i, coeff), ...]
        self.cols = {ab: [[(i, mat[i][j]) for i in range(dim) if mat[i][j]] for j in range(dim)]
                     for ab, mat in self.action.items()}
        if check:
            rep = validate(self)
            if not rep.passed:
                f = rep.failures[0]
                raise ModuleValidationError(f.key, f"bracket relation violated at (a,b,c,d)={f.key}")

    def __repr__(self):
        return f"GlModule({self.name}, m={self.m}, dim={self.dim})"

    def matrix(self, a: int, b: int) -> Matrix:
        return self.action[(a, b)]

    def col(self, a: int, b: int, j: int):
        """Nonzero entries of ``E_ab u_j``."""
        return self.cols[(a, b)][j]

    def act(self, a: int, b: int, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for j, c in vec.items():
            for i, v in self.cols[(a, b)][j]:
                s = out.get(i, 0) + c * v
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def identity_matrix(self) -> Matrix:
        """Matrix of ``I = E_11 + ... + E_mm``."""
        out = self.action[(1, 1)]
        for a in range(2, self.m + 1):
            out = matadd(out, self.action[(a, a)])
        return out

    def to_json(self) -> dict:
        return {"m": self.m, "dim": self.dim,
                "matrices": [[[[str(x) for x in row] for row in self.action[(a, b)]]
                              for b in range(1, self.m + 1)] for a in range(1, self.m + 1)]}


@dataclass(frozen=True)
class SlRestriction:
    """A gl_m-module used only through its sl_m structure (corrected operators)."""
    base: GlModule
    use_sl_correction: bool = True


def make_natural(m: int) -> GlModule:
    if m < 1:
        raise ValueError("m >= 1")
    return GlModule(m, m, {(a, b): elementary(m, a - 1, b - 1)
                           for a, b in product(range(1, m + 1), repeat=2)}, name=f"natural({m})")


def make_onedim(m: int, weights: Sequence) -> GlModule:
    weights = [parse_rational(w) for w in weights]
    if len(weights) != m:
        raise ValueError("need one weight per diagonal unit")
    action = {(a, b): ((weights[a - 1] if a == b else Fraction(0),),)
              for a, b in product(range(1, m + 1), repeat=2)}
    label = ",".join(str(w) for w in weights)
    return GlModule(m, 1, action, name=f"onedim({m};{label})")


def make_trivial(m: int) -> GlModule:
    return make_onedim(m, [0] * m)


def tensor(u1: GlModule, u2: GlModule) -> GlModule:
    """``E_ab ⊗ id + id ⊗ E_ab``; basis index ``i1 * dim2 + i2``."""
    if u1.m != u2.m:
        raise ValueError("tensor product of modules over different gl_m")
    d1, d2 = u1.dim, u2.dim
    action = {}
    for ab in u1.action:
        a1, a2 = u1.action[ab], u2.action[ab]
        rows = _zero(d1 * d2)
        for i1, j1 in product(range(d1), repeat=2):
            if a1[i1][j1]:
                for k in range(d2):
                    rows[i1 * d2 + k][j1 * d2 + k] += a1[i1][j1]
        for i2, j2 in product(range(d2), repeat=2):
            if a2[i2][j2]:
                for k in range(d1):
                    rows[k * d2 + i2][k * d2 + j2] += a2[i2][j2]
        action[ab] = rows
    return GlModule(u1.m, d1 * d2, action, name=f"{u1.name}⊗{u2.name}")


def validate(u: GlModule) -> CheckReport:
    """Check all m^4 bracket relations exactly."""
    rep = CheckReport("validate", {"module": u.name, "m": u.m, "dim": u.dim})
    zero = _freeze(_zero(u.dim))
    m = u.m
    for a, b, c, d in product(range(1, m + 1), repeat=4):
        lhs = matsub(matmul(u.action[(a, b)], u.action[(c, d)]),
                     matmul(u.action[(c, d)], u.action[(a, b)]))
        rhs = zero
        if b == c:
            rhs = matadd(rhs, u.action[(a, d)])
        if d == a:
            rhs = matsub(rhs, u.action[(c, b)])
        rep.record("bracket", (a, b, c, d), lhs == rhs)
    return rep


# -- tensors in gl_m ⊗ gl_m ---------------------------------------------------

def gl_coordinates(m: int, mat: Dict[Tuple[int, int], Fraction]) -> Dict[tuple, Fraction]:
    """Coordinates of a gl_m element in the basis {E_ab (a≠b), H_a, I}.

    ``H_a = E_aa - E_{a+1,a+1}`` for ``a < m``; keys ``("E", a, b)``,
    ``("H", a)`` and ``("I",)``.
    """
    out: Dict[tuple, Fraction] = {}
    diag = [Fraction(mat.get((a, a), 0)) for a in range(1, m + 1)]
    trace = sum(diag, Fraction(0)) / m
    running = Fraction(0)
    for a in range(1, m):
        running += diag[a - 1] - trace
        if running:
            out[("H", a)] = running
    if trace:
        out[("I",)] = trace
    for (a, b), c in mat.items():
        if a != b and c:
            out[("E", a, b)] = Fraction(c)
    return out


def casimir_split_check(m: int) -> CheckReport:
    """``Σ E_ab ⊗ E_ba - (1/m) I ⊗ I`` has no component along I in either factor."""
    rep = CheckReport("casimir_split", {"m": m})
    coords = {}
    for a, b in product(range(1, m + 1), repeat=2):
        coords[(a, b)] = gl_coordinates(m, {(a, b): Fraction(1)})
    omega: Dict[tuple, Fraction] = {}
    for a, b in product(range(1, m + 1), repeat=2):
        for k1, c1 in coords[(a, b)].items():
            for k2, c2 in coords[(b, a)].items():
                omega[(k1, k2)] = omega.get((k1, k2), 0) + c1 * c2
    omega = {k: v for k, v in omega.items() if v}
    trace_parts = {k: v for k, v in omega.items() if ("I",) in k}
    rep.record("trace part of Σ E_ab⊗E_ba is (1/m) I⊗I", m,
               trace_parts == {(("I",), ("I",)): Fraction(1, m)},
               expected={"I⊗I": Fraction(1, m)}, actual=trace_parts)
    corrected = dict(omega)
    corrected[(("I",), ("I",))] = corrected.get((("I",), ("I",)), 0) - Fraction(1, m)
    leftover = {k: v for k, v in corrected.items() if v and ("I",) in k}
    rep.record("corrected element lies in sl⊗sl", m, not leftover, expected={}, actual=leftover)
    # the coordinates must reconstruct the original element
    rebuilt: Dict[tuple, Fraction] = {}
    for (k1, k2), c in omega.items():
        for e1, v1 in _basis_matrix(m, k1).items():
            for e2, v2 in _basis_matrix(m, k2).items():
                rebuilt[(e1, e2)] = rebuilt.get((e1, e2), 0) + c * v1 * v2
    rebuilt = {k: v for k, v in rebuilt.items() if v}
    direct = {((a, b), (b, a)): Fraction(1) for a, b in product(range(1, m + 1), repeat=2)}
    rep.record("coordinates reconstruct Σ E_ab⊗E_ba", m, rebuilt == direct)
    return rep


def _basis_matrix(m: int, k: tuple) -> Dict[Tuple[int, int], Fraction]:
    if k[0] == "E":
        return {(k[1], k[2]): Fraction(1)}
    if k[0] == "H":
        return {(k[1], k[1]): Fraction(1), (k[1] + 1, k[1] + 1): Fraction(-1)}
    return {(a, a): Fraction(1) for a in range(1, m + 1)}


def gl_bracket(x: Tuple[int, int], y: Tuple[int, int]) -> Dict[Tuple[int, int], int]:
    """``[E_ab, E_cd] = δ_bc E_ad - δ_da E_cb`` as a sparse combination."""
    (a, b), (c, d) = x, y
    out: Dict[Tuple[int, int], int] = {}
    if b == c:
        out[(a, d)] = out.get((a, d), 0) + 1
    if d == a:
        out[(c, b)] = out.get((c, b), 0) - 1
    return {k: v for k, v in out.items() if v}


def check_cybe(m: int) -> CheckReport:
    """Classical Yang–Baxter equation for ``r(u,v) = (u-v)^{-1} Σ E_ab ⊗ E_ba``.

    Computes ``[r12, r13] + [r12, r23] + [r13, r23]`` in ``gl_m^{⊗3}`` with
    coefficients in the difference fractions of ``u1, u2, u3``.
    """
    rep = CheckReport("cybe", {"m": m})
    units = list(product(range(1, m + 1), repeat=2))
    # counts[key] = (n for f12*f13, n for f12*f23, n for f13*f23)
    counts: Dict[tuple, List[int]] = {}

    def bump(key, slot, c):
        counts.setdefault(key, [0, 0, 0])[slot] += c

    for (a, b), (c, d) in product(units, repeat=2):
        for e, v in gl_bracket((a, b), (c, d)).items():
            bump((e, (b, a), (d, c)), 0, v)
        for e, v in gl_bracket((b, a), (c, d)).items():
            bump(((a, b), e, (d, c)), 1, v)
        for e, v in gl_bracket((b, a), (d, c)).items():
            bump(((a, b), (c, d), e), 2, v)

    f12 = DiffFrac.inverse_difference(3, 1, 2)
    f13 = DiffFrac.inverse_difference(3, 1, 3)
    f23 = DiffFrac.inverse_difference(3, 2, 3)
    prods = (f12 * f13, f12 * f23, f13 * f23)
    for key in sorted(counts):
        n = counts[key]
        total = DiffFrac.zero(3)
        for slot in range(3):
            if n[slot]:
                total = total + prods[slot] * n[slot]
        rep.record("cybe entry", key, total.is_zero(), expected=0, actual=repr(total.reduce()))
    if not counts:
        rep.record("cybe entry", (), True)
    return rep
