"""Normal forms modulo q-images and the two coinvariant equivalences.

Affine setting: W over an induced module; ``q`` is the negative-mode part of
the sl loop algebra.  A PBW factor ``P t^{-k}`` on the module side is rewritten
as ``-Σ_q x_q^{-k} ⊗ P^{(q)}`` on the loop side, since ``θ(P) w`` is zero in
the quotient.  Each step removes a factor, so the rewriting terminates.

Finite setting: ``E_N`` of the gl_{m+n}-module parabolically induced from
``U ⊗ V``.  Here ``q`` (the lower-left block) is abelian and the same rule
applies with ``E_ab^{(q)}`` on ``(C^{m+n})^{⊗N}``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from typing import Dict, List

from .affine import InducedModule, induce_affine, is_trace_key, key_depth, q_basis, qkey_lie
from .exact import monomial_divided_difference, shift_exp, swap_exp
from .glmod import GlModule
from .hecke import fn_z
from .linops import (CheckReport, LinOp, TensorSpace, commutator, identity_op, lin_sum,
                     sample_basis, scalar_op, vadd, vclean, vterm)
from .symgroup import Perm, all_perms, simple, transposition
from .wspace import LevelError, WSpace, _sub

STRATEGIES = ("leftmost", "rightmost")


# -- affine setting ---------------------------------------------------------------

class AffineReducer:
    """Normal forms on W modulo ``q W``; trace factors ``I t^{-k}`` (gl flavor) survive."""

    def __init__(self, module: InducedModule, n: int):
        self.module, self.n, self.m = module, n, module.m
        self._memo = {s: {} for s in STRATEGIES}

    def sl_positions(self, mono) -> List[int]:
        return [i for i, qk in enumerate(mono) if not is_trace_key(qk, self.m)]

    def is_normal(self, key) -> bool:
        return not self.sl_positions(key[2][0])

    def nf_key(self, key, strategy: str = "leftmost") -> dict:
        memo = self._memo[strategy]
        out = memo.get(key)
        if out is not None:
            return out
        e, w, (mono, u) = key
        pos = self.sl_positions(mono)
        if not pos:
            out = {key: 1}
        else:
            i = pos[0] if strategy == "leftmost" else pos[-1]
            P = mono[i]
            rest = (mono[:i] + mono[i + 1:], u)
            raw: dict = {}
            # loop-side image of P, with a minus sign
            for (a, b, j), c in qkey_lie(P, self.m).items():
                for q in range(1, self.n + 1):
                    if w[q - 1] == b:
                        vterm(raw, (shift_exp(e, q, j), _sub(w, q, a), rest), -c)
            # P·rest differs from the key by shorter monomials
            for mk, c in self.module.insert(P, rest).items():
                if mk != (mono, u):
                    vterm(raw, (e, w, mk), -c)
                elif c != 1:
                    raise AssertionError("PBW insertion lost its leading term")
            out = {}
            for k2, c in raw.items():
                vadd(out, self.nf_key(k2, strategy), c)
        memo[key] = out
        return out

    def nf(self, vec: dict, strategy: str = "leftmost") -> dict:
        out: dict = {}
        for key, c in vec.items():
            vadd(out, self.nf_key(key, strategy), c)
        return out


def nf_affine(reducer: AffineReducer, vec: dict, strategy: str = "leftmost") -> dict:
    return reducer.nf(vec, strategy)


def _soundness(rep: CheckReport, reducer, vectors, nf_fn, normal, label: str):
    """Two-strategy agreement, idempotence and normality of normal forms."""
    for tag, vec in vectors:
        a = vclean(nf_fn(vec, "leftmost"))
        b = vclean(nf_fn(vec, "rightmost"))
        rep.record(f"{label}: leftmost = rightmost", tag, a == b, expected=a, actual=b)
        rep.record(f"{label}: normal form is reduced", tag, all(normal(k) for k in a))
        rep.record(f"{label}: idempotent", tag, vclean(nf_fn(a, "leftmost")) == a)


def check_qw_preservation(wsp: WSpace, keys, q_depth: int = 2, control: bool = True,
                          strict: bool = True) -> CheckReport:
    """``nf(Y_p θ(P) w) = 0`` for q-generators ``P``; negative control one level up.

    With ``strict`` the level must be ``κ - m``.
    """
    if strict and wsp.level != wsp.kappa - wsp.m:
        raise LevelError(f"level {wsp.level} != κ - m = {wsp.kappa - wsp.m}")
    keys = list(keys)
    rep = CheckReport("prop15_qw", {"m": wsp.m, "N": wsp.n, "kappa": wsp.kappa, "level": wsp.level,
                                    "flavor": wsp.flavor, "q_depth": q_depth, "keys": len(keys)})
    _qw_core(wsp, keys, q_depth, rep, expect_zero=True)
    if control:
        shifted = WSpace(wsp.module.with_level(wsp.level + 1), wsp.n, wsp.kappa, wsp.corrected)
        neg = CheckReport("control")
        witness = _qw_core(shifted, keys, q_depth, neg, expect_zero=False)
        rep.expect_witness("level κ - m + 1 breaks qW preservation", witness)
    return rep


def _qw_core(wsp: WSpace, keys, q_depth, rep, expect_zero: bool):
    red = AffineReducer(wsp.module, wsp.n)
    gens = q_basis("sl", wsp.m, q_depth)
    vectors = []
    for P in gens:
        theta = wsp.theta(qkey_lie(P, wsp.m))
        for key in keys:
            tv = theta(key)
            if expect_zero:
                out = vclean(red.nf(tv))
                rep.record("nf(θ(P) w) = 0", (P, key), not out, expected={}, actual=out)
            for p in range(1, wsp.n + 1):
                v = wsp.Y(p).apply(tv)
                out = vclean(red.nf(v))
                if expect_zero:
                    rep.record(f"nf(Y{p} θ(P) w) = 0", (P, key), not out, expected={}, actual=out)
                    if len(vectors) < 400:
                        vectors.append(((p, P, key), v))
                elif out:
                    return (p, P, key)
    if expect_zero:
        _soundness(rep, red, vectors, red.nf, red.is_normal, "nf_affine")
    return None


# -- the T_N module induced from F_N(U) ---------------------------------------------

class TnModule:
    """``C[x^±] ⊗ (C^m)^{⊗N} ⊗ U`` with x acting by multiplication, σ diagonally
    and ``z_p`` through the sl-corrected Hecke action on constants:

    ``z_p (f ⊗ v) = f ⊗ z_p v + κ x_p ∂_p f ⊗ v + Σ_{r≠p} x_p Δ_pr(f) ⊗ σ_pr v``
    with ``Δ_pr(f) = (f - σ_pr f) / (x_p - x_r)``.
    """

    def __init__(self, base: GlModule, n: int, kappa):
        self.base, self.n, self.m = base, n, base.m
        self.kappa = Fraction(kappa)
        self.space = ("Tn", id(self))
        self._fz = [fn_z(base, n, p) for p in range(1, n + 1)]
        self._z: dict = {}

    def keys(self, lo: int, hi: int):
        for e in product(range(lo, hi + 1), repeat=self.n):
            for w in product(range(1, self.m + 1), repeat=self.n):
                for j in range(self.base.dim):
                    yield (e, w, j)

    def X(self, p: int, k: int = 1) -> LinOp:
        return LinOp(lambda key: {(shift_exp(key[0], p, k), key[1], key[2]): 1},
                     f"x{p}^{k}", self.space, memo=False)

    def perm(self, s: Perm) -> LinOp:
        return LinOp(lambda key: {(s.act_on_tuple(key[0]), s.act_on_tuple(key[1]), key[2]): 1},
                     f"σ{s.to_list()}", self.space, memo=False)

    def sigma(self, p: int) -> LinOp:
        return self.perm(simple(p, self.n))

    def sigma_pq(self, p: int, q: int) -> LinOp:
        return LinOp(lambda key: {(swap_exp(key[0], p, q), swap_exp(key[1], p, q), key[2]): 1},
                     f"σ{p}{q}", self.space, memo=False)

    def z(self, p: int) -> LinOp:
        op = self._z.get(p)
        if op is None:
            n, kappa, fz = self.n, self.kappa, self._fz[p - 1]

            def fn(key):
                e, w, j = key
                out: dict = {}
                for (w2, j2), c in fz((w, j)).items():
                    vterm(out, (e, w2, j2), c)
                if e[p - 1] and kappa:
                    vterm(out, key, kappa * e[p - 1])
                for r in range(1, n + 1):
                    if r != p:
                        w2 = swap_exp(w, p, r)
                        for f, s in monomial_divided_difference(e, p, r):
                            vterm(out, (shift_exp(f, p, 1), w2, j), s)
                return out
            op = self._z[p] = LinOp(fn, f"z{p}", self.space)
        return op

    def u(self, p: int) -> LinOp:
        parts = [self.z(p)] + [self.sigma_pq(q, p) for q in range(1, p)]
        return lin_sum(parts, f"u{p}")


def build_tn_module(base: GlModule, n: int, kappa) -> TnModule:
    return TnModule(base, n, kappa)


def tn_relation_suite(tn: TnModule, keys) -> CheckReport:
    """T_N relations for the model operators."""
    keys = list(keys)
    n, kappa = tn.n, tn.kappa
    rep = CheckReport("tn_module", {"N": n, "kappa": kappa, "keys": len(keys)})

    def check(label, lhs, rhs):
        for key in keys:
            a, b = vclean(lhs(key)), vclean(rhs(key))
            rep.record(label, key, a == b, expected=b, actual=a)
    one = identity_op(tn.space)
    xs = [tn.X(p) for p in range(1, n + 1)]
    for p in range(1, n + 1):
        check(f"x{p} x{p}^-1 = id", xs[p - 1] @ tn.X(p, -1), one)
    for s in all_perms(n):
        sop, sinv = tn.perm(s), tn.perm(s.inverse())
        for p in range(1, n + 1):
            check(f"σ z{p} σ^-1 = z{s(p)}", sop @ tn.z(p) @ sinv, tn.z(s(p)))
            check(f"σ x{p} σ^-1 = x{s(p)}", sop @ xs[p - 1] @ sinv, xs[s(p) - 1])
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if q != p:
                check(f"[z{p}, x{q}] = -x{p} σ{p}{q}", commutator(tn.z(p), xs[q - 1]),
                      (xs[p - 1] @ tn.sigma_pq(p, q)).scale(-1))
                check(f"[z{p}, z{q}] = σ{p}{q}(z{p} - z{q})", commutator(tn.z(p), tn.z(q)),
                      tn.sigma_pq(p, q) @ (tn.z(p) - tn.z(q)))
        rhs = lin_sum([xs[p - 1].scale(kappa)]
                      + [xs[p - 1] @ tn.sigma_pq(p, r) for r in range(1, n + 1) if r != p])
        check(f"[z{p}, x{p}] = κ x{p} + Σ x{p} σ{p}r", commutator(tn.z(p), xs[p - 1]), rhs)
    for p in range(1, n):
        check(f"σ{p} u{p} = u{p + 1} σ{p} - 1", tn.sigma(p) @ tn.u(p), tn.u(p + 1) @ tn.sigma(p) - one)
    return rep


def check_thm_17(base: GlModule, n: int, kappa, lo: int = -2, hi: int = 2, depth: int = 2,
                 samples: int = 200, seed: int = 0, level_offset=0, strict: bool = True) -> CheckReport:
    """ι-equivariance between the T_N model and the coinvariants of W.

    W is built over the sl-induced module of level ``κ - m + level_offset``; with
    ``strict`` a nonzero offset is a precondition error.
    """
    kappa = Fraction(kappa)
    m = base.m
    level = kappa - m + Fraction(level_offset)
    if strict and level_offset:
        raise LevelError("the equivalence needs level κ - m")
    module = induce_affine(base, level, "sl")
    wsp = WSpace(module, n, kappa, corrected=True)
    tn = build_tn_module(base, n, kappa)
    red = AffineReducer(module, n)
    rep = CheckReport("thm17", {"m": m, "N": n, "kappa": kappa, "level": level,
                                "window": [lo, hi], "depth": depth, "samples": samples, "seed": seed})

    def iota(vec):
        return {(e, w, ((), j)): c for (e, w, j), c in vec.items()}

    def iota_inv(vec):
        out = {}
        for (e, w, (mono, j)), c in vec.items():
            if mono:
                raise AssertionError("normal form has module depth")
            out[(e, w, j)] = c
        return out

    gens = []
    for p in range(1, n + 1):
        gens.append((f"x{p}", wsp.X(p), tn.X(p)))
        gens.append((f"x{p}^-1", wsp.X(p, -1), tn.X(p, -1)))
        gens.append((f"z{p}", wsp.cherednik(p), tn.z(p)))
    for p in range(1, n):
        gens.append((f"σ{p}", wsp.sigma(p), tn.sigma(p)))
    model_keys = sample_basis(list(tn.keys(lo, hi)), samples, seed)
    vectors = []
    for name, gw, gt in gens:
        for key in model_keys:
            v = gw((key[0], key[1], ((), key[2])))
            lhs = vclean(red.nf(v))
            rhs = vclean(iota(gt(key)))
            rep.record(f"nf({name} ι(v)) = ι({name} v)", key, lhs == rhs, expected=rhs, actual=lhs)
            if len(vectors) < 300:
                vectors.append(((name, key), v))
    w_keys = wsp.sample(lo, hi, depth, samples, seed + 1)
    for name, gw, gt in gens:
        for key in w_keys:
            v = gw(key)
            lhs = vclean(red.nf(v))
            rhs = vclean(iota(gt.apply(iota_inv(red.nf({key: 1})))))
            rep.record(f"nf({name} w) = ι({name} nf(w))", key, lhs == rhs, expected=rhs, actual=lhs)
            if len(vectors) < 600:
                vectors.append(((name, key), v))
    _soundness(rep, red, vectors, red.nf, red.is_normal, "nf_affine")
    return rep


# -- finite setting ----------------------------------------------------------------

class ParabolicModule:
    """``U(q) ⊗ U ⊗ V`` as a gl_{m+n}-module; ``q`` is spanned by ``E_ab``, ``a > m >= b``.

    Keys ``(mono, (iu, iv))`` with ``mono`` a sorted tuple of pairs ``(a, b)``.
    """

    def __init__(self, U: GlModule, V: GlModule):
        self.U, self.V = U, V
        self.m, self.n = U.m, V.m
        self.rank = self.m + self.n
        self._memo: dict = {}

    def in_q(self, a: int, b: int) -> bool:
        return a > self.m >= b

    def q_gens(self) -> List[tuple]:
        return [(a, b) for a in range(self.m + 1, self.rank + 1) for b in range(1, self.m + 1)]

    def base_keys(self):
        return [(iu, iv) for iu in range(self.U.dim) for iv in range(self.V.dim)]

    def act(self, c: int, d: int, mkey) -> dict:
        memo = (c, d, mkey)
        out = self._memo.get(memo)
        if out is not None:
            return out
        mono, (iu, iv) = mkey
        m = self.m
        if self.in_q(c, d):
            out = {(tuple(sorted(mono + ((c, d),))), (iu, iv)): 1}
        elif mono:
            y, rest = mono[0], mono[1:]
            out = {}
            for (mono2, uv), v in self.act(c, d, (rest, (iu, iv))).items():
                vadd(out, self.act(y[0], y[1], (mono2, uv)), v)
            a, b = y
            if d == a:
                vadd(out, self.act(c, b, (rest, (iu, iv))))
            if b == c:
                vadd(out, self.act(a, d, (rest, (iu, iv))), -1)
        elif c <= m and d <= m:
            out = {((), (i, iv)): v for i, v in self.U.col(c, d, iu)}
        elif c > m and d > m:
            out = {((), (iu, i)): v for i, v in self.V.col(c - m, d - m, iv)}
        else:
            out = {}
        self._memo[memo] = out
        return out


class FiniteSide:
    """``E_N`` of the parabolic module: keys ``(word, mkey)`` with letters in ``1..m+n``."""

    def __init__(self, U: GlModule, V: GlModule, n_tensor: int):
        self.M = ParabolicModule(U, V)
        self.N = n_tensor
        self.rank = self.M.rank
        self.space = ("E_N", id(self))
        self._nf = {s: {} for s in STRATEGIES}

    def z(self, p: int) -> LinOp:
        M, rank = self.M, self.rank

        def fn(key):
            w, mk = key
            out: dict = {}
            b = w[p - 1]
            for a in range(1, rank + 1):
                w2 = _sub(w, p, a)
                for mk2, c in M.act(b, a, mk).items():
                    vterm(out, (w2, mk2), c)
            return out
        return LinOp(fn, f"z{p}", self.space)

    def sigma_pq(self, p: int, q: int) -> LinOp:
        return LinOp(lambda key: {(swap_exp(key[0], p, q), key[1]): 1}, f"σ{p}{q}", self.space, memo=False)

    def sigma(self, p: int) -> LinOp:
        return self.sigma_pq(p, p + 1)

    def u(self, p: int) -> LinOp:
        return lin_sum([self.z(p)] + [self.sigma_pq(q, p) for q in range(1, p)], f"u{p}")

    def q_action(self, a: int, b: int) -> LinOp:
        M = self.M

        def fn(key):
            w, mk = key
            out: dict = {}
            for q in range(1, self.N + 1):
                if w[q - 1] == b:
                    vterm(out, (_sub(w, q, a), mk), 1)
            for mk2, c in M.act(a, b, mk).items():
                vterm(out, (w, mk2), c)
            return out
        return LinOp(fn, f"E{a}{b}", self.space, memo=False)

    def keys(self, depth: int):
        gens = self.M.q_gens()
        monos = [()]

        def grow(prefix, start, left):
            for i in range(start, len(gens)):
                mono = prefix + (gens[i],)
                monos.append(mono)
                if left > 1:
                    grow(mono, i, left - 1)
        if depth:
            grow((), 0, depth)
        for w in product(range(1, self.rank + 1), repeat=self.N):
            for mono in monos:
                for uv in self.M.base_keys():
                    yield (w, (mono, uv))

    def nf_key(self, key, strategy: str = "leftmost") -> dict:
        memo = self._nf[strategy]
        out = memo.get(key)
        if out is not None:
            return out
        w, (mono, uv) = key
        if not mono:
            out = {key: 1}
        else:
            i = 0 if strategy == "leftmost" else len(mono) - 1
            a, b = mono[i]
            rest = (mono[:i] + mono[i + 1:], uv)
            out = {}
            for q in range(1, self.N + 1):
                if w[q - 1] == b:
                    vadd(out, self.nf_key((_sub(w, q, a), rest), strategy), -1)
        memo[key] = out
        return out

    def nf(self, vec: dict, strategy: str = "leftmost") -> dict:
        out: dict = {}
        for key, c in vec.items():
            vadd(out, self.nf_key(key, strategy), c)
        return out


def nf_finite(side: FiniteSide, vec: dict, strategy: str = "leftmost") -> dict:
    return side.nf(vec, strategy)


def _shuffle_split(g: Perm, k: int):
    """``g = π h`` with π a (k, N-k)-shuffle and ``h`` in Sym_k × Sym_{N-k}."""
    n = len(g)
    head = sorted(g(i) for i in range(1, k + 1))
    tail = sorted(g(i) for i in range(k + 1, n + 1))
    pi = Perm(head + tail)
    return pi, pi.inverse() * g


def push_u(p: int, s: Perm):
    """Write ``u_p s`` as ``Σ c g u_q`` plus ``Σ c g`` using the cross relations.

    Returns ``(g, q or None, c)`` triples.
    """
    n = len(s)
    terms = [(Perm.identity(n), p, 1)]
    for i in s.reduced_word():
        si = simple(i, n)
        nxt = []
        for g, q, c in terms:
            if q is None:
                nxt.append((g * si, None, c))
                continue
            nxt.append((g * si, si(q), c))
            if q == i + 1:
                nxt.append((g, None, c))
            elif q == i:
                nxt.append((g, None, -c))
        terms = nxt
    return terms


class Bimodule125:
    """``⊕_K Ind E_K(U) ⊗ E_{N-K}^{-m}(V)`` on keys ``(π, word, (iu, iv))``.

    ``word`` has its first K letters in ``1..m`` and the rest in ``m+1..m+n``;
    ``π`` is a (K, N-K)-shuffle.  ``bound`` selects the upper limit of the
    σ-sums in the subspace action: ``"p-1"`` or ``"p"`` (the latter reads
    ``σ_pp`` as the identity).
    """

    def __init__(self, U: GlModule, V: GlModule, n_tensor: int, bound: str = "p-1"):
        if bound not in ("p-1", "p"):
            raise ValueError("bound must be 'p-1' or 'p'")
        self.U, self.V, self.n, self.bound = U, V, n_tensor, bound
        self.m, self.nn = U.m, V.m
        self.space = TensorSpace(self.m + self.nn, n_tensor, U.dim * V.dim, tag=f"bimodule125:{bound}")
        self.shift = 0
        self.sl = False

    def block(self, word) -> int:
        return sum(1 for a in word if a <= self.m)

    def keys(self):
        m, nn, N = self.m, self.nn, self.n
        uvs = [(iu, iv) for iu in range(self.U.dim) for iv in range(self.V.dim)]
        for k in range(N + 1):
            pis = [Perm(list(h) + [i for i in range(1, N + 1) if i not in h])
                   for h in _combinations(N, k)]
            for pi in pis:
                for head in product(range(1, m + 1), repeat=k):
                    for tail in product(range(m + 1, m + nn + 1), repeat=N - k):
                        for uv in uvs:
                            yield (pi, head + tail, uv)

    def _place(self, g: Perm, word, uv, c, out):
        pi, h = _shuffle_split(g, self.block(word))
        vterm(out, (pi, h.act_on_tuple(word), uv), c)

    def _u_inner(self, q: int, word, uv) -> dict:
        """``u_q`` of the Young subalgebra on ``(word, uv)``."""
        m, k = self.m, self.block(word)
        extra = 1 if self.bound == "p" else 0
        out: dict = {}
        iu, iv = uv
        lo = 1 if q <= k else k + 1
        for r in range(lo, q):
            vterm(out, (swap_exp(word, q, r), uv), 1)
        b = word[q - 1]
        if q <= k:
            for a in range(1, m + 1):
                for i, v in self.U.col(b, a, iu):
                    vterm(out, (_sub(word, q, a), (i, iv)), v)
            const = extra
        else:
            for a in range(m + 1, m + self.nn + 1):
                for i, v in self.V.col(b - m, a - m, iv):
                    vterm(out, (_sub(word, q, a), (iu, i)), v)
            const = extra - m
        if const:
            vterm(out, (word, uv), const)
        return out

    def u(self, p: int) -> LinOp:
        def fn(key):
            pi, word, uv = key
            out: dict = {}
            for g, q, c in push_u(p, pi):
                if q is None:
                    self._place(g, word, uv, c, out)
                else:
                    for (w2, uv2), v in self._u_inner(q, word, uv).items():
                        self._place(g, w2, uv2, c * v, out)
            return out
        return LinOp(fn, f"u{p}", self.space)

    def perm(self, s: Perm) -> LinOp:
        def fn(key):
            pi, word, uv = key
            out: dict = {}
            self._place(s * pi, word, uv, 1, out)
            return out
        return LinOp(fn, f"σ{s.to_list()}", self.space, memo=False)

    def sigma(self, p: int) -> LinOp:
        return self.perm(simple(p, self.n))

    def sigma_pq(self, p: int, q: int) -> LinOp:
        return self.perm(transposition(p, q, self.n))

    def z(self, p: int) -> LinOp:
        parts = [self.u(p)] + [self.sigma_pq(q, p).scale(-1) for q in range(1, p)]
        return lin_sum(parts, f"z{p}")

    def generators(self) -> List[dict]:
        m, r = self.m, self.m + self.nn
        return [{(c, d): 1} for c, d in product(range(1, r + 1), repeat=2)
                if (c <= m) == (d <= m)]

    def diag(self, elem: dict) -> LinOp:
        """Action of ``gl_m ⊕ gl_n`` on the letters and on ``U``, ``V``."""
        m = self.m

        def fn(key):
            pi, word, uv = key
            out: dict = {}
            iu, iv = uv
            for (c, d), coef in elem.items():
                for q in range(1, self.n + 1):
                    if word[q - 1] == d:
                        vterm(out, (pi, _sub(word, q, c), uv), coef)
                if c <= m:
                    for i, v in self.U.col(c, d, iu):
                        vterm(out, (pi, word, (i, iv)), coef * v)
                else:
                    for i, v in self.V.col(c - m, d - m, iv):
                        vterm(out, (pi, word, (iu, i)), coef * v)
            return out
        return LinOp(fn, "diag", self.space, memo=False)

    def iota(self, key):
        pi, word, uv = key
        return (pi.act_on_tuple(word), ((), uv))


def _combinations(n, k):
    from itertools import combinations
    return combinations(range(1, n + 1), k)


def build_bimodule_125(U: GlModule, V: GlModule, m: int, n: int, N: int, bound: str = "p-1") -> Bimodule125:
    if U.m != m or V.m != n:
        raise ValueError("module ranks do not match (m, n)")
    return Bimodule125(U, V, N, bound)


def _equivariance(rep, side: FiniteSide, model: Bimodule125, keys, label_prefix=""):
    witness = None
    for p in range(1, model.n + 1):
        up_model, up_side = model.u(p), side.u(p)
        for key in keys:
            lhs = vclean({model.iota(k): c for k, c in up_model(key).items()})
            rhs = vclean(side.nf(up_side(model.iota(key))))
            ok = lhs == rhs
            if rep is not None:
                rep.record(f"{label_prefix}ι u{p} = nf(u{p} ι)", key, ok, expected=rhs, actual=lhs)
            if not ok and witness is None:
                witness = (p, key)
    return witness


def check_thm_125(U: GlModule, V: GlModule, m: int, n: int, N: int, depth: int = 2) -> CheckReport:
    """Exhaustive check of the finite coinvariant equivalence."""
    from .hecke import hecke_relation_suite
    model = build_bimodule_125(U, V, m, n, N)
    side = FiniteSide(U, V, N)
    rep = CheckReport("thm125", {"m": m, "n": n, "N": N, "U": U.name, "V": V.name, "depth": depth})
    keys = list(model.keys())
    expected = (m + n) ** N * U.dim * V.dim
    vandermonde = sum(comb(N, k) * m ** k * n ** (N - k) for k in range(N + 1)) * U.dim * V.dim
    images = {model.iota(k) for k in keys}
    depth0 = [k for k in side.keys(0)]
    rep.record("dimension = (m+n)^N dimU dimV", (m, n, N), len(keys) == expected == vandermonde,
               expected=expected, actual=len(keys))
    rep.record("ι is a bijection onto depth-0 keys", (m, n, N),
               len(images) == len(keys) and images == set(depth0))
    for key in depth0:
        rep.record("nf fixes depth 0", key, side.nf({key: 1}) == {key: 1})
    vectors = []
    for key in side.keys(depth):
        vectors.append((key, {key: 1}))
    for a, b in side.M.q_gens():
        qa = side.q_action(a, b)
        for key in side.keys(max(depth - 1, 0)):
            out = vclean(side.nf(qa(key)))
            rep.record("nf(E_ab w) = 0 for E_ab in q", ((a, b), key), not out, expected={}, actual=out)
    _soundness(rep, side, vectors, side.nf, lambda k: not k[1][0], "nf_finite")
    for p in range(1, N):
        sp_model, sp_side = model.sigma(p), side.sigma(p)
        for key in keys:
            lhs = {model.iota(k): c for k, c in sp_model(key).items()}
            rhs = side.nf(sp_side(model.iota(key)))
            rep.record(f"ι σ{p} = σ{p} ι", key, vclean(lhs) == vclean(rhs), expected=rhs, actual=lhs)
    _equivariance(rep, side, model, keys)
    for g in model.generators():
        diag_m = model.diag(g)
        (c, d), = g.keys()
        for key in keys:
            lhs = vclean({model.iota(k): v for k, v in diag_m(key).items()})
            w, mk = model.iota(key)
            raw: dict = {}
            for q in range(1, N + 1):
                if w[q - 1] == d:
                    vterm(raw, (_sub(w, q, c), mk), 1)
            for mk2, v in side.M.act(c, d, mk).items():
                vterm(raw, (w, mk2), v)
            rhs = vclean(side.nf(raw))
            rep.record("ι is gl_m ⊕ gl_n equivariant", key, lhs == rhs, expected=rhs, actual=lhs)
    rep.merge(hecke_relation_suite(model, keys, "bimodule"), "bimodule: ")
    wrong = build_bimodule_125(U, V, m, n, N, bound="p")
    rep.expect_witness("upper bound p breaks u-equivariance", _equivariance(None, side, wrong, keys))
    return rep
