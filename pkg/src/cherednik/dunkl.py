"""Dunkl operators and the polynomial representations of the rational and
trigonometric Cherednik algebras.

Basis keys are exponent tuples; vectors are dicts ``exponent -> Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import monomial_divided_difference, shift_exp, swap_exp
from .linops import (CheckReport, LaurentSpace, LinOp, PolySpace, commutator, identity_op,
                     lin_sum, scalar_op, vclean)
from .symgroup import Perm, all_perms


@dataclass(frozen=True)
class CherednikParams:
    n: int
    kappa: Fraction

    def __post_init__(self):
        object.__setattr__(self, "kappa", Fraction(self.kappa))


SPACE = "x-polynomials"


def x_op(n: int, q: int, k: int = 1) -> LinOp:
    """Multiplication by ``x_q^k``."""
    return LinOp(lambda e: {shift_exp(e, q, k): 1}, f"x{q}^{k}" if k != 1 else f"x{q}", SPACE,
                 memo=False)


def perm_op(s: Perm) -> LinOp:
    return LinOp(lambda e: {s.act_on_tuple(e): 1}, f"σ{s.to_list()}", SPACE, memo=False)


def sigma_op(n: int, p: int, q: int) -> LinOp:
    return LinOp(lambda e: {swap_exp(e, p, q): 1}, f"σ{p}{q}", SPACE, memo=False)


def _dd_into(out, e, p, r, c):
    for f, s in monomial_divided_difference(e, p, r):
        v = out.get(f, 0) + c * s
        if v:
            out[f] = v
        else:
            out.pop(f, None)


def dunkl_y(params: CherednikParams, p: int) -> LinOp:
    """``κ ∂_p + Σ_{r≠p} (x_p - x_r)^{-1} (1 - σ_pr)``."""
    n, kappa = params.n, params.kappa

    def fn(e):
        out = {}
        if e[p - 1] and kappa:
            out[shift_exp(e, p, -1)] = kappa * e[p - 1]
        for r in range(1, n + 1):
            if r != p:
                _dd_into(out, e, p, r, 1)
        return out
    return LinOp(fn, f"y{p}", SPACE)


def trig_z(params: CherednikParams, p: int) -> LinOp:
    """``κ x_p ∂_p + Σ_{r≠p} x_p (x_p - x_r)^{-1} (1 - σ_pr)``."""
    n, kappa = params.n, params.kappa

    def fn(e):
        out = {}
        if e[p - 1] and kappa:
            out[e] = kappa * e[p - 1]
        for r in range(1, n + 1):
            if r != p:
                for f, s in monomial_divided_difference(e, p, r):
                    g = shift_exp(f, p, 1)
                    v = out.get(g, 0) + s
                    if v:
                        out[g] = v
                    else:
                        out.pop(g, None)
        return out
    return LinOp(fn, f"z{p}", SPACE)


def trig_u(params: CherednikParams, p: int) -> LinOp:
    """``trig_z + Σ_{r<p} σ_pr``."""
    parts = [trig_z(params, p)] + [sigma_op(params.n, p, r) for r in range(1, p)]
    return LinOp(lin_sum(parts).fn, f"u{p}", SPACE)


def _checker(rep, keys):
    def check(label, lhs, rhs):
        for key in keys:
            a, b = vclean(lhs(key)), vclean(rhs(key))
            rep.record(label, key, a == b, expected=b, actual=a)
    return check


def rational_relation_suite(params: CherednikParams, degree_bound: int = 5) -> CheckReport:
    """Dunkl representation of the rational Cherednik algebra on monomials of
    total degree at most ``degree_bound``."""
    if degree_bound < 1:
        raise ValueError("degree_bound >= 1")
    n, kappa = params.n, params.kappa
    keys = list(PolySpace(n, degree_bound).keys())
    rep = CheckReport("dunkl_rational", {"N": n, "kappa": kappa, "degree": degree_bound})
    check = _checker(rep, keys)
    ys = [dunkl_y(params, p) for p in range(1, n + 1)]
    xs = [x_op(n, p) for p in range(1, n + 1)]
    one = identity_op(SPACE)
    for key in keys:
        out = ys[0](key)
        rep.record("y preserves polynomials", key, all(min(f) >= 0 for f in out))
    for s in all_perms(n):
        sop, sinv = perm_op(s), perm_op(s.inverse())
        for p in range(1, n + 1):
            check(f"σ y{p} σ^-1 = y{s(p)} ({s.to_list()})", sop @ ys[p - 1] @ sinv, ys[s(p) - 1])
            check(f"σ x{p} σ^-1 = x{s(p)} ({s.to_list()})", sop @ xs[p - 1] @ sinv, xs[s(p) - 1])
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if q != p:
                check(f"[y{p}, x{q}] = -σ{p}{q}", commutator(ys[p - 1], xs[q - 1]),
                      sigma_op(n, p, q).scale(-1))
                if q > p:
                    check(f"[y{p}, y{q}] = 0", commutator(ys[p - 1], ys[q - 1]), scalar_op(0, SPACE))
        rhs = lin_sum([one.scale(kappa)] + [sigma_op(n, p, r) for r in range(1, n + 1) if r != p])
        check(f"[y{p}, x{p}] = κ + Σ σ{p}r", commutator(ys[p - 1], xs[p - 1]), rhs)
    return rep


def trig_relation_suite(params: CherednikParams, lo: int = -3, hi: int = 3) -> CheckReport:
    """Trigonometric Cherednik relations on Laurent monomials with exponents in
    ``[lo, hi]``."""
    if lo > hi:
        raise ValueError("empty window")
    n, kappa = params.n, params.kappa
    keys = list(LaurentSpace(n, lo, hi).keys())
    rep = CheckReport("dunkl_trig", {"N": n, "kappa": kappa, "window": [lo, hi]})
    check = _checker(rep, keys)
    zs = [trig_z(params, p) for p in range(1, n + 1)]
    us = [trig_u(params, p) for p in range(1, n + 1)]
    ys = [dunkl_y(params, p) for p in range(1, n + 1)]
    xs = [x_op(n, p) for p in range(1, n + 1)]
    xinv = [x_op(n, p, -1) for p in range(1, n + 1)]
    one = identity_op(SPACE)
    zero = scalar_op(0, SPACE)

    def sig(p, q):
        return sigma_op(n, p, q)

    for p in range(1, n + 1):
        check(f"x{p} x{p}^-1 = id", xs[p - 1] @ xinv[p - 1], one)
        check(f"z{p} = x{p} y{p}", zs[p - 1], xs[p - 1] @ ys[p - 1])
        check(f"u{p} - z{p} = Σ_(r<p) σ{p}r", us[p - 1] - zs[p - 1],
              lin_sum([sig(p, r) for r in range(1, p)]) if p > 1 else zero)
    for s in all_perms(n):
        sop, sinv = perm_op(s), perm_op(s.inverse())
        for p in range(1, n + 1):
            check(f"σ z{p} σ^-1 = z{s(p)} ({s.to_list()})", sop @ zs[p - 1] @ sinv, zs[s(p) - 1])
            check(f"σ x{p} σ^-1 = x{s(p)} ({s.to_list()})", sop @ xs[p - 1] @ sinv, xs[s(p) - 1])
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if q == p:
                continue
            check(f"[z{p}, x{q}] = -x{p} σ{p}{q}", commutator(zs[p - 1], xs[q - 1]),
                  (xs[p - 1] @ sig(p, q)).scale(-1))
            lead = xs[q - 1] if q < p else xs[p - 1]
            check(f"[u{p}, x{q}] = -x{min(p, q)} σ{p}{q}",
                  commutator(us[p - 1], xs[q - 1]), (lead @ sig(p, q)).scale(-1))
            check(f"[z{p}, z{q}] = σ{p}{q}(z{p} - z{q})", commutator(zs[p - 1], zs[q - 1]),
                  sig(p, q) @ (zs[p - 1] - zs[q - 1]))
            if q > p:
                check(f"[u{p}, u{q}] = 0", commutator(us[p - 1], us[q - 1]), zero)
        rhs_z = lin_sum([xs[p - 1].scale(kappa)]
                        + [xs[p - 1] @ sig(p, r) for r in range(1, n + 1) if r != p])
        check(f"[z{p}, x{p}] = κ x{p} + Σ x{p} σ{p}r", commutator(zs[p - 1], xs[p - 1]), rhs_z)
        rhs_u = lin_sum([xs[p - 1].scale(kappa)]
                        + [xs[r - 1] @ sig(p, r) for r in range(1, p)]
                        + [xs[p - 1] @ sig(p, r) for r in range(p + 1, n + 1)])
        check(f"[u{p}, x{p}] = κ x{p} + Σ_(r<p) x_r σ{p}r + Σ_(r>p) x{p} σ{p}r",
              commutator(us[p - 1], xs[p - 1]), rhs_u)
    for p in range(1, n):
        sp = sig(p, p + 1)
        for q in range(1, n + 1):
            if q not in (p, p + 1):
                check(f"σ{p} u{q} = u{q} σ{p}", sp @ us[q - 1], us[q - 1] @ sp)
        check(f"σ{p} u{p} = u{p + 1} σ{p} - 1", sp @ us[p - 1], us[p] @ sp - one)
    return rep


def embedding_check(params: CherednikParams, degree_bound: int = 5) -> CheckReport:
    """``z_p -> x_p y_p`` satisfies the conjugation and commutator relations of
    the elements ``z_p`` of H_N."""
    if degree_bound < 1:
        raise ValueError("degree_bound >= 1")
    n = params.n
    keys = list(PolySpace(n, degree_bound).keys())
    rep = CheckReport("embedding", {"N": n, "kappa": params.kappa, "degree": degree_bound})
    check = _checker(rep, keys)
    zs = [x_op(n, p) @ dunkl_y(params, p) for p in range(1, n + 1)]
    for p in range(1, n + 1):
        rep.record(f"x{p} y{p} (1) = 0", (0,) * n, not vclean(zs[p - 1]((0,) * n)))
    for s in all_perms(n):
        sop, sinv = perm_op(s), perm_op(s.inverse())
        for p in range(1, n + 1):
            check(f"σ z{p} σ^-1 = z{s(p)} ({s.to_list()})", sop @ zs[p - 1] @ sinv, zs[s(p) - 1])
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if p != q:
                check(f"[z{p}, z{q}] = σ{p}{q}(z{p} - z{q})", commutator(zs[p - 1], zs[q - 1]),
                      sigma_op(n, p, q) @ (zs[p - 1] - zs[q - 1]))
    return rep
