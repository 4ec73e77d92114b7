"""Degenerate affine Hecke algebra H_N acting on (C^m)^{⊗N} ⊗ U.

``z_p`` acts as ``Σ_ab E_ab^{(p)} ⊗ E_ba`` (minus ``(1/m) id ⊗ I`` when only
the sl_m structure of U is used), the symmetric group permutes tensor
factors, and ``u_p = z_p + Σ_{q<p} σ_qp + f`` for a shift ``f``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import List

from .glmod import GlModule
from .linops import (CheckReport, LinOp, TensorSpace, commutator, identity_op, lin_sum,
                     scalar_op, vclean)
from .symgroup import GroupAlgElem, Perm, simple, transposition


def _sub(word, p, a):
    lst = list(word)
    lst[p - 1] = a
    return tuple(lst)


def perm_op(s: Perm, space) -> LinOp:
    def fn(key):
        w, j = key
        return {(s.act_on_tuple(w), j): 1}
    return LinOp(fn, f"σ{s.to_list()}", space, memo=False)


def _z_fn(module: GlModule, p: int, sl: bool):
    m = module.m
    inv_m = Fraction(1, m)

    def fn(key):
        w, j = key
        out = {}
        b = w[p - 1]
        for a in range(1, m + 1):
            w2 = _sub(w, p, a)
            for i, c in module.col(b, a, j):
                k = (w2, i)
                out[k] = out.get(k, 0) + c
        if sl:
            for c in range(1, m + 1):
                for i, v in module.col(c, c, j):
                    k = (w, i)
                    out[k] = out.get(k, 0) - inv_m * v
        return {k: v for k, v in out.items() if v}
    return fn


def en_z(module: GlModule, n: int, p: int) -> LinOp:
    """``z_p`` through the gl_m-module structure."""
    if not 1 <= p <= n:
        raise ValueError("p out of range")
    space = TensorSpace(module.m, n, module.dim)
    return LinOp(_z_fn(module, p, False), f"z{p}", space)


def fn_z(module: GlModule, n: int, p: int) -> LinOp:
    """``z_p`` through the sl_m structure only (trace correction subtracted)."""
    if not 1 <= p <= n:
        raise ValueError("p out of range")
    space = TensorSpace(module.m, n, module.dim)
    return LinOp(_z_fn(module, p, True), f"z{p}^sl", space)


def diag_op(module: GlModule, n: int, elem: dict, space=None) -> LinOp:
    """Diagonal gl_m action of ``Σ c_ab E_ab`` on all N factors and on U."""
    space = space or TensorSpace(module.m, n, module.dim)

    def fn(key):
        w, j = key
        out = {}
        for (c, d), coef in elem.items():
            for q in range(1, n + 1):
                if w[q - 1] == d:
                    k = (_sub(w, q, c), j)
                    out[k] = out.get(k, 0) + coef
            for i, v in module.col(c, d, j):
                k = (w, i)
                out[k] = out.get(k, 0) + coef * v
        return {k: v for k, v in out.items() if v}
    return LinOp(fn, f"diag{sorted(elem.items())}", space)


def gl_generators(m: int) -> List[dict]:
    return [{(c, d): 1} for c, d in product(range(1, m + 1), repeat=2)]


def sl_generators(m: int) -> List[dict]:
    gens = [{(c, d): 1} for c, d in product(range(1, m + 1), repeat=2) if c != d]
    gens += [{(a, a): 1, (a + 1, a + 1): -1} for a in range(1, m)]
    return gens


class HeckeActionFamily:
    """Operators for σ_p, z_p, u_p on ``(C^m)^{⊗N} ⊗ U`` with shift ``f``."""

    def __init__(self, module: GlModule, n: int, shift=0, sl: bool = False):
        self.module, self.n, self.sl = module, n, sl
        self.m = module.m
        self.shift = Fraction(shift)
        self.space = TensorSpace(self.m, n, module.dim)
        make = fn_z if sl else en_z
        self._z = [make(module, n, p) for p in range(1, n + 1)]
        self._u = [self._build_u(p) for p in range(1, n + 1)]

    def _build_u(self, p: int) -> LinOp:
        parts = [self.z(p)] + [self.sigma_pq(q, p) for q in range(1, p)]
        if self.shift:
            parts.append(scalar_op(self.shift, self.space))
        op = lin_sum(parts, f"u{p}")
        return LinOp(op.fn, f"u{p}", self.space)

    def z(self, p: int) -> LinOp:
        return self._z[p - 1]

    def u(self, p: int) -> LinOp:
        return self._u[p - 1]

    def sigma(self, p: int) -> LinOp:
        return perm_op(simple(p, self.n), self.space)

    def sigma_pq(self, p: int, q: int) -> LinOp:
        return perm_op(transposition(p, q, self.n), self.space)

    def perm(self, s: Perm) -> LinOp:
        return perm_op(s, self.space)

    def diag(self, elem: dict) -> LinOp:
        return diag_op(self.module, self.n, elem, self.space)

    def generators(self) -> List[dict]:
        return sl_generators(self.m) if self.sl else gl_generators(self.m)

    def keys(self):
        return list(self.space.keys())


def en_u(family: HeckeActionFamily, p: int) -> LinOp:
    return family.u(p)


def eval_hom(n: int, p: int) -> GroupAlgElem:
    """Image of ``u_p`` under the evaluation map onto the group algebra."""
    out = GroupAlgElem.zero(n)
    for q in range(1, p):
        out = out + GroupAlgElem.of(transposition(q, p, n))
    return out


def eval_hom_z(n: int, p: int) -> GroupAlgElem:
    """Image of ``z_p = u_p - Σ_{q<p} σ_qp``; always zero."""
    out = eval_hom(n, p)
    for q in range(1, p):
        out = out - GroupAlgElem.of(transposition(q, p, n))
    return out


def hecke_relation_suite(family, keys=None, name: str = "hecke") -> CheckReport:
    """Cross relations, conjugation of z, commutators of z, and commutation
    with the diagonal Lie algebra action.

    ``family`` needs ``n``, ``space``, ``sigma``, ``sigma_pq``, ``z``, ``u``,
    ``generators`` and ``diag``; anything providing them can be checked.
    """
    n = family.n
    keys = list(keys if keys is not None else family.space.keys())
    rep = CheckReport(name, {"N": n, "shift": getattr(family, "shift", 0),
                             "sl": getattr(family, "sl", False), "keys": len(keys)})
    one = identity_op(family.space)

    def check(label, lhs, rhs):
        for key in keys:
            a, b = vclean(lhs(key)), vclean(rhs(key))
            rep.record(label, key, a == b, expected=b, actual=a)

    for p in range(1, n):
        sp = family.sigma(p)
        for q in range(1, n + 1):
            if q not in (p, p + 1):
                check(f"σ{p} u{q} = u{q} σ{p}", sp @ family.u(q), family.u(q) @ sp)
        check(f"σ{p} u{p} = u{p + 1} σ{p} - 1", sp @ family.u(p), family.u(p + 1) @ sp - one)
    for p in range(1, n + 1):
        for q in range(p + 1, n + 1):
            check(f"[u{p}, u{q}] = 0", commutator(family.u(p), family.u(q)), scalar_op(0, family.space))
    for q in range(1, n):
        sq = family.sigma(q)
        s = simple(q, n)
        for p in range(1, n + 1):
            check(f"σ{q} z{p} σ{q} = z{s(p)}", sq @ family.z(p) @ sq, family.z(s(p)))
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if p != q:
                check(f"[z{p}, z{q}] = σ{p}{q}(z{p} - z{q})", commutator(family.z(p), family.z(q)),
                      family.sigma_pq(p, q) @ (family.z(p) - family.z(q)))
    for p in range(1, n + 1):
        for g in family.generators():
            check(f"[z{p}, diag{sorted(g.items())}] = 0",
                  commutator(family.z(p), family.diag(g)), scalar_op(0, family.space))
    return rep
