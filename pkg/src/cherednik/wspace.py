"""The space W = C[x^±] ⊗ (C^m)^{⊗N} ⊗ V and the operators X_p, Y_p, θ on it.

Keys are ``(e, w, mkey)``: an exponent tuple, a word with 1-based letters and
a basis key of the induced module V.

``Y_p = κ ∂_p + Σ_{r≠p} dd_pr ⊗ σ_pr + Σ_{i>=0} x_p^{-i-1} Σ_ab E_ab^{(p)} ⊗ E_ba t^i``,
where ``dd_pr`` is the divided difference on the polynomial factor.  With the
trace correction switched on, ``(1/m) x_p^{-i-1} ⊗ id ⊗ I t^i`` is subtracted
from each summand of the last sum.  The i-sum stops at the depth of the key.

The extended operators ``D_p``, ``R_p``, ``T_p`` act on vectors with
rational-function coefficients (:class:`DiffFrac`); ``κD_p - R_p + T_p`` is
``Y_p`` again.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, List

from .affine import (CENTRAL, InducedModule, key_depth, lie_bracket, loop_generators,
                     q_coordinates)
from .exact import DiffFrac, LaurentPoly, frac_eq, monomial_divided_difference, shift_exp, swap_exp
from .hecke import gl_generators, hecke_relation_suite, sl_generators
from .linops import (CheckReport, LinOp, commutator, identity_op, lin_sum, sample_basis,
                     scalar_op, vadd, vclean, vterm)
from .symgroup import Perm, all_perms, simple, transposition


class LevelError(ValueError):
    pass


def _sub(word, p, a):
    lst = list(word)
    lst[p - 1] = a
    return tuple(lst)


class WKeys:
    """Bounded window of W-keys: x-exponents in ``[lo, hi]``, module depth ``<= depth``."""

    def __init__(self, wsp: "WSpace", lo: int, hi: int, depth: int):
        if lo > hi:
            raise ValueError("empty x-window")
        self.wsp, self.lo, self.hi, self.depth = wsp, lo, hi, depth

    def keys(self):
        n, m = self.wsp.n, self.wsp.m
        mkeys = self.wsp.module.keys(self.depth)
        for e in product(range(self.lo, self.hi + 1), repeat=n):
            for w in product(range(1, m + 1), repeat=n):
                for mk in mkeys:
                    yield (e, w, mk)


class _BaseOps:
    """κ-independent pieces shared by every WSpace over the same module."""

    def __init__(self):
        self.D: dict = {}
        self.Y0: dict = {}


class WSpace:
    def __init__(self, module: InducedModule, n: int, kappa, corrected: bool | None = None,
                 _base: _BaseOps | None = None):
        if corrected is None:
            corrected = module.flavor == "sl"
        if module.flavor == "sl" and not corrected:
            raise ValueError("an sl-induced module needs the trace-corrected operators")
        self.module, self.n, self.m = module, n, module.m
        self.kappa = Fraction(kappa)
        self.corrected = corrected
        self.space = ("W", id(module), n, corrected)
        self._base = _base or _BaseOps()
        self._Y: dict = {}
        self._theta: dict = {}

    def __repr__(self):
        return (f"WSpace(m={self.m}, N={self.n}, kappa={self.kappa}, level={self.module.level}, "
                f"{self.module.flavor}{', corrected' if self.corrected else ''})")

    @property
    def level(self) -> Fraction:
        return self.module.level

    @property
    def flavor(self) -> str:
        return "sl" if self.corrected else "gl"

    def with_kappa(self, kappa) -> "WSpace":
        return WSpace(self.module, self.n, kappa, self.corrected, self._base)

    def window(self, lo: int, hi: int, depth: int) -> WKeys:
        return WKeys(self, lo, hi, depth)

    def sample(self, lo: int, hi: int, depth: int, count: int, seed: int = 0) -> list:
        return sample_basis(self.window(lo, hi, depth), count, seed, limit=count)

    # -- elementary operators ---------------------------------------------------
    def X(self, p: int, k: int = 1) -> LinOp:
        self._check_p(p)
        return LinOp(lambda key: {(shift_exp(key[0], p, k), key[1], key[2]): 1},
                     f"X{p}^{k}", self.space, memo=False)

    def X_inv(self, p: int) -> LinOp:
        return self.X(p, -1)

    def perm(self, s: Perm) -> LinOp:
        return LinOp(lambda key: {(s.act_on_tuple(key[0]), s.act_on_tuple(key[1]), key[2]): 1},
                     f"σ{s.to_list()}", self.space, memo=False)

    def sigma(self, p: int) -> LinOp:
        return self.perm(simple(p, self.n))

    def sigma_pq(self, p: int, q: int) -> LinOp:
        return LinOp(lambda key: {(swap_exp(key[0], p, q), swap_exp(key[1], p, q), key[2]): 1},
                     f"σ{p}{q}", self.space, memo=False)

    def D(self, p: int) -> LinOp:
        """``∂_p`` on the polynomial factor."""
        self._check_p(p)
        op = self._base.D.get(p)
        if op is None:
            def fn(key):
                e, w, mk = key
                return {(shift_exp(e, p, -1), w, mk): e[p - 1]} if e[p - 1] else {}
            op = self._base.D[p] = LinOp(fn, f"D{p}", self.space)
        return op

    def Y0(self, p: int) -> LinOp:
        """The κ-independent part ``Y_p - κ D_p``."""
        self._check_p(p)
        op = self._base.Y0.get(p)
        if op is None:
            op = self._base.Y0[p] = LinOp(self._y0_fn(p), f"Y0_{p}", self.space)
        return op

    def _y0_fn(self, p):
        n, m, module = self.n, self.m, self.module
        corr = Fraction(-1, m) if self.corrected else 0

        def fn(key):
            e, w, mk = key
            out: dict = {}
            for r in range(1, n + 1):
                if r != p:
                    w2 = swap_exp(w, p, r)
                    for f, s in monomial_divided_difference(e, p, r):
                        vterm(out, (f, w2, mk), s)
            b = w[p - 1]
            for i in range(key_depth(mk) + 1):
                e2 = shift_exp(e, p, -(i + 1))
                for a in range(1, m + 1):
                    w2 = _sub(w, p, a)
                    for mk2, c in module.act_gen(b, a, i, mk).items():
                        vterm(out, (e2, w2, mk2), c)
                if corr:
                    for c in range(1, m + 1):
                        for mk2, v in module.act_gen(c, c, i, mk).items():
                            vterm(out, (e2, w, mk2), corr * v)
            return out
        return fn

    def Y(self, p: int) -> LinOp:
        op = self._Y.get(p)
        if op is None:
            kappa, D, Y0 = self.kappa, self.D(p), self.Y0(p)

            def fn(key):
                out = dict(Y0(key))
                if kappa:
                    vadd(out, D(key), kappa)
                return out
            op = self._Y[p] = LinOp(fn, f"Y{p}", self.space)
        return op

    def cherednik(self, p: int) -> LinOp:
        """``X_p Y_p``: the action of ``z_p``."""
        return LinOp((self.X(p) @ self.Y(p)).fn, f"z{p}", self.space)

    z = cherednik

    def u(self, p: int) -> LinOp:
        parts = [self.cherednik(p)] + [self.sigma_pq(q, p) for q in range(1, p)]
        return LinOp(lin_sum(parts).fn, f"u{p}", self.space, memo=False)

    def theta(self, elem: dict) -> LinOp:
        """``Σ_q x_q^j E_cd^{(q)} + E_cd t^j`` on the module factor; ``C`` acts by the level."""
        frozen = tuple(sorted(elem.items(), key=lambda kv: str(kv[0])))
        op = self._theta.get(frozen)
        if op is not None:
            return op
        n, module = self.n, self.module
        loop = [(g, c) for g, c in elem.items() if g != CENTRAL and c]

        def fn(key):
            e, w, mk = key
            out: dict = {}
            for (c, d, j), coef in loop:
                for q in range(1, n + 1):
                    if w[q - 1] == d:
                        vterm(out, (shift_exp(e, q, j), _sub(w, q, c), mk), coef)
            for mk2, v in module.act(elem, mk).items():
                vterm(out, (e, w, mk2), v)
            return out
        op = self._theta[frozen] = LinOp(fn, f"θ{[str(g) for g, _ in frozen]}", self.space)
        return op

    def diag(self, elem: dict) -> LinOp:
        """Mode-0 action of ``Σ c_cd E_cd`` (for the generic Hecke suite)."""
        return self.theta({(c, d, 0): v for (c, d), v in elem.items()})

    def generators(self) -> List[dict]:
        return sl_generators(self.m) if self.corrected else gl_generators(self.m)

    def _check_p(self, p):
        if not 1 <= p <= self.n:
            raise ValueError(f"index {p} out of range 1..{self.n}")

    # -- extended space -----------------------------------------------------------
    def ext_DRT(self, p: int):
        """``(D_p, R_p, T_p)`` on vectors ``(w, mkey) -> DiffFrac``."""
        self._check_p(p)
        return ExtOp(self._ext_D(p), f"D{p}"), ExtOp(self._ext_R(p), f"R{p}"), \
            ExtOp(self._ext_T(p), f"T{p}")

    def _ext_D(self, p):
        def fn(vec):
            out = {}
            for k, f in vec.items():
                _acc(out, k, f.partial(p))
            return out
        return fn

    def _ext_R(self, p):
        n = self.n

        def fn(vec):
            out = {}
            for (w, mk), f in vec.items():
                for r in range(1, n + 1):
                    if r != p:
                        _acc(out, (swap_exp(w, p, r), mk), f.swap(p, r).mul_by_inverse_difference(p, r))
            return out
        return fn

    def _ext_T(self, p):
        n, m, module = self.n, self.m, self.module
        corr = Fraction(-1, m) if self.corrected else 0

        def fn(vec):
            out = {}
            for (w, mk), f in vec.items():
                for r in range(1, n + 1):
                    if r != p:
                        _acc(out, (swap_exp(w, p, r), mk), f.mul_by_inverse_difference(p, r))
                b = w[p - 1]
                for i in range(key_depth(mk) + 1):
                    g = DiffFrac(f.num.shift(shift_exp((0,) * n, p, -(i + 1))), f.den)
                    for a in range(1, m + 1):
                        w2 = _sub(w, p, a)
                        for mk2, c in module.act_gen(b, a, i, mk).items():
                            _acc(out, (w2, mk2), g * c)
                    if corr:
                        for c in range(1, m + 1):
                            for mk2, v in module.act_gen(c, c, i, mk).items():
                                _acc(out, (w, mk2), g * (corr * v))
            return out
        return fn

    def embed(self, key) -> dict:
        e, w, mk = key
        return {(w, mk): DiffFrac(LaurentPoly.monomial(e))}


# -- extended-space operators ------------------------------------------------------

def _acc(out, k, f):
    cur = out.get(k)
    out[k] = f if cur is None else cur + f


class ExtOp:
    """Operator on vectors with DiffFrac coefficients."""

    def __init__(self, fn, name="ext"):
        self.fn, self.name = fn, name

    def __call__(self, vec):
        return self.fn(vec)

    def __add__(self, other):
        return ExtOp(lambda v: ext_add(self(v), other(v)), f"({self.name}+{other.name})")

    def __sub__(self, other):
        return ExtOp(lambda v: ext_add(self(v), other(v), -1), f"({self.name}-{other.name})")

    def scale(self, c):
        c = Fraction(c)
        return ExtOp(lambda v: {k: f * c for k, f in self(v).items()}, f"{c}{self.name}")

    def __matmul__(self, other):
        return ExtOp(lambda v: self(other(v)), f"{self.name}∘{other.name}")


def ext_add(a: dict, b: dict, c=1) -> dict:
    out = dict(a)
    for k, f in b.items():
        _acc(out, k, f if c == 1 else f * c)
    return out


def ext_commutator(a: ExtOp, b: ExtOp) -> ExtOp:
    return ExtOp(lambda v: ext_add(a(b(v)), b(a(v)), -1), f"[{a.name},{b.name}]")


def ext_is_zero(vec: dict) -> bool:
    return all(f.is_zero() for f in vec.values())


def ext_equal(a: dict, b: dict) -> bool:
    return ext_is_zero(ext_add(a, b, -1))


def ext_to_w(vec: dict):
    """Back to a W-vector, or ``None`` if some coefficient is not a Laurent polynomial."""
    out: dict = {}
    for (w, mk), f in vec.items():
        poly = f.as_laurent()
        if poly is None:
            return None
        for e, c in poly:
            vterm(out, (e, w, mk), c)
    return out


# -- suites -----------------------------------------------------------------------

def _checker(rep, keys):
    def check(label, lhs, rhs):
        for key in keys:
            a, b = vclean(lhs(key)), vclean(rhs(key))
            rep.record(label, key, a == b, expected=b, actual=a)
    return check


def prop15_suite(wsp: WSpace, keys, witness_keys=None) -> CheckReport:
    """R_N presentation for ``(X, Y, σ)``, ``[Y_p, Y_q] = 0``, the Hecke relations
    for ``z_p = X_p Y_p`` and commutation of ``Y_p`` with mode-0 ``θ``."""
    keys = list(keys)
    n, kappa = wsp.n, wsp.kappa
    rep = CheckReport("ast_prop15", {"m": wsp.m, "N": n, "kappa": kappa, "level": wsp.level,
                                     "flavor": wsp.flavor, "keys": len(keys)})
    check = _checker(rep, keys)
    one = identity_op(wsp.space)
    zero = scalar_op(0, wsp.space)
    Y = [wsp.Y(p) for p in range(1, n + 1)]
    X = [wsp.X(p) for p in range(1, n + 1)]
    for p in range(1, n + 1):
        check(f"X{p} X{p}^-1 = id", X[p - 1] @ wsp.X_inv(p), one)
        for q in range(p + 1, n + 1):
            check(f"[Y{p}, Y{q}] = 0", commutator(Y[p - 1], Y[q - 1]), zero)
            check(f"[X{p}, X{q}] = 0", commutator(X[p - 1], X[q - 1]), zero)
    for s in all_perms(n):
        sop, sinv = wsp.perm(s), wsp.perm(s.inverse())
        for p in range(1, n + 1):
            check(f"σ Y{p} σ^-1 = Y{s(p)} ({s.to_list()})", sop @ Y[p - 1] @ sinv, Y[s(p) - 1])
            check(f"σ X{p} σ^-1 = X{s(p)} ({s.to_list()})", sop @ X[p - 1] @ sinv, X[s(p) - 1])
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if q != p:
                check(f"[Y{p}, X{q}] = -σ{p}{q}", commutator(Y[p - 1], X[q - 1]),
                      wsp.sigma_pq(p, q).scale(-1))
        rhs = lin_sum([one.scale(kappa)] + [wsp.sigma_pq(p, r) for r in range(1, n + 1) if r != p])
        check(f"[Y{p}, X{p}] = κ + Σ σ{p}r", commutator(Y[p - 1], X[p - 1]), rhs)
        for g in wsp.generators():
            elem = {(c, d, 0): v for (c, d), v in g.items()}
            check(f"[Y{p}, θ(mode 0)] = 0", commutator(Y[p - 1], wsp.theta(elem)), zero)
    rep.merge(hecke_relation_suite(wsp, keys, "hecke"), "z=XY: ")
    witness_keys = list(witness_keys if witness_keys is not None else keys)
    lhs = commutator(Y[0], wsp.theta({(1, 2, 1): 1}))
    rep.expect_witness("[Y1, θ(E12 t)] != 0 somewhere",
                       next((k for k in witness_keys if vclean(lhs(k))), None))
    return rep


def theta_representation_check(wsp: WSpace, keys, lo: int = -2, hi: int = 2) -> CheckReport:
    """``θ`` is a representation of the affine algebra with ``C`` acting by the level."""
    keys = list(keys)
    gens = loop_generators(wsp.m, lo, hi, wsp.module.flavor)
    rep = CheckReport("theta_representation", {"m": wsp.m, "N": wsp.n, "level": wsp.level,
                                               "flavor": wsp.module.flavor, "modes": [lo, hi]})
    for i, g1 in enumerate(gens):
        for g2 in gens[i + 1:]:
            lhs = commutator(wsp.theta(g1), wsp.theta(g2))
            rhs = wsp.theta(lie_bracket(g1, g2))
            for key in keys:
                a, b = vclean(lhs(key)), vclean(rhs(key))
                rep.record("[θ(g1), θ(g2)] = θ([g1, g2])", key, a == b, expected=b, actual=a)
    return rep


def lift_independence_check(wsp_a: WSpace, wsp_b: WSpace, keys) -> CheckReport:
    """Corrected ``Y_p`` agree for two gl-extensions of one sl-module."""
    rep = CheckReport("sl_lift_independence", {"a": wsp_a.module.base.name, "b": wsp_b.module.base.name})
    for p in range(1, wsp_a.n + 1):
        for key in keys:
            a, b = vclean(wsp_a.Y(p)(key)), vclean(wsp_b.Y(p)(key))
            rep.record(f"Y{p} independent of the I-eigenvalue", key, a == b, expected=a, actual=b)
    return rep


EPSILONS = (0, 1, -1, 2)


def lemma_suite_31_35(wsp: WSpace, keys, epsilons=EPSILONS) -> CheckReport:
    """Commutation identities of D, R, T in the extended space and the ε-family."""
    keys = list(keys)
    n, kappa = wsp.n, wsp.kappa
    rep = CheckReport("ast_lemmas3", {"m": wsp.m, "N": n, "kappa": kappa, "level": wsp.level,
                                      "flavor": wsp.flavor, "keys": len(keys)})
    ops = [wsp.ext_DRT(p) for p in range(1, n + 1)]
    com = ext_commutator

    def check(label, op):
        for key in keys:
            out = op(wsp.embed(key))
            rep.record(label, key, ext_is_zero(out), expected=0, actual={k: repr(f) for k, f in out.items()})

    for p in range(1, n + 1):
        Dp, Rp, Tp = ops[p - 1]
        for q in range(p + 1, n + 1):
            Dq, Rq, Tq = ops[q - 1]
            check(f"[D{p}, D{q}] = 0", com(Dp, Dq))
            check(f"[R{p}, R{q}] = 0", com(Rp, Rq))
            check(f"[T{p}, T{q}] = 0", com(Tp, Tq))
            check(f"[D{p}, R{q}] + [R{p}, D{q}] = 0", com(Dp, Rq) + com(Rp, Dq))
            check(f"[D{p}, T{q}] + [T{p}, D{q}] = 0", com(Dp, Tq) + com(Tp, Dq))
            check(f"[R{p}, T{q}] + [T{p}, R{q}] = 0", com(Rp, Tq) + com(Tp, Rq))
            for eps in epsilons:
                fam_p = Dp.scale(kappa) + Rp.scale(eps) + Tp
                fam_q = Dq.scale(kappa) + Rq.scale(eps) + Tq
                check(f"[κD{p} + {eps}R{p} + T{p}, κD{q} + {eps}R{q} + T{q}] = 0", com(fam_p, fam_q))
    for p in range(1, n + 1):
        Dp, Rp, Tp = ops[p - 1]
        ext_y = Dp.scale(kappa) - Rp + Tp
        for key in keys:
            out = ext_to_w(ext_y(wsp.embed(key)))
            ok = out is not None and vclean(out) == vclean(wsp.Y(p)(key))
            rep.record(f"κD{p} - R{p} + T{p} = Y{p} on W", key, ok)
    # ε = 0 leaves W on some key, ε = -1 never does
    D1, R1, T1 = ops[0]
    leaving = None
    for key in keys:
        if ext_to_w((D1.scale(kappa) + T1)(wsp.embed(key))) is None:
            leaving = key
            break
    rep.expect_witness("κD1 + T1 leaves W", leaving)
    r_leaving = next((k for k in keys if ext_to_w(R1(wsp.embed(k))) is None), None)
    rep.expect_witness("R1 leaves W", r_leaving)
    return rep


# -- the commutator [Y_1, θ(E_cd t^j)] ------------------------------------------------

def _require_level(wsp: WSpace, check_level: bool):
    if check_level and wsp.level != wsp.kappa - wsp.m:
        raise LevelError(f"level {wsp.level} != κ - m = {wsp.kappa - wsp.m}")


def _trace_shift(wsp: WSpace, j: int, c: int, d: int) -> Fraction:
    """Scalar coefficient of ``x_1^{j-1}`` removed by the trace correction."""
    if not wsp.corrected or c != d:
        return Fraction(0)
    return Fraction(wsp.m - wsp.kappa, wsp.m) * j


def commutator_rhs(wsp: WSpace, j: int, c: int, d: int) -> LinOp:
    """Closed form of ``[Y_1, θ(E_cd t^j)]`` for ``j < 0`` at level ``κ - m``."""
    n, m, module = wsp.n, wsp.m, wsp.module
    x1j = (j,) + (0,) * (n - 1)
    ddj = {r: monomial_divided_difference(x1j, 1, r) for r in range(2, n + 1)}
    shift = _trace_shift(wsp, j, c, d)

    def fn(key):
        e, w, mk = key
        out: dict = {}
        # loop-loop part
        for r in range(2, n + 1):
            for a in range(1, m + 1):
                terms = []
                if w[r - 1] == d and w[0] == a:
                    terms.append((_sub(_sub(w, r, a), 1, c), 1))
                if w[r - 1] == a and w[0] == d:
                    terms.append((_sub(_sub(w, r, c), 1, a), -1))
                for w2, sgn in terms:
                    for f, s in ddj[r]:
                        vterm(out, (tuple(x + y for x, y in zip(e, f)), w2, mk), -s * sgn)
        e1 = shift_exp(e, 1, j - 1)
        if w[0] == d:
            vterm(out, (e1, _sub(w, 1, c), mk), m * j)
        if shift:
            vterm(out, (e1, w, mk), -shift)
        # loop-module part, grouped so trace directions cancel before acting
        for i in range(-j):
            elems: Dict[tuple, dict] = {}
            for a in range(1, m + 1):
                if w[0] == a:
                    vterm(elems.setdefault(_sub(w, 1, c), {}), (a, d, i + j), 1)
                if w[0] == d:
                    vterm(elems.setdefault(_sub(w, 1, a), {}), (c, a, i + j), -1)
            e2 = shift_exp(e, 1, -i - 1)
            for w2, elem in elems.items():
                if elem:
                    for mk2, v in module.act(elem, mk).items():
                        vterm(out, (e2, w2, mk2), v)
        return out
    return LinOp(fn, f"rhs[Y1, θ(E{c}{d} t^{j})]", wsp.space)


def commutator_formula_check(wsp: WSpace, j: int, c: int, d: int, keys,
                             check_level: bool = True) -> CheckReport:
    if j >= 0:
        raise ValueError("j must be negative")
    _require_level(wsp, check_level)
    keys = list(keys)
    rep = CheckReport("ast_commutator_j", {"m": wsp.m, "N": wsp.n, "kappa": wsp.kappa,
                                           "level": wsp.level, "flavor": wsp.flavor,
                                           "j": j, "c": c, "d": d, "keys": len(keys)})
    lhs = commutator(wsp.Y(1), wsp.theta({(c, d, j): 1}))
    _checker(rep, keys)(f"[Y1, θ(E{c}{d} t^{j})] = closed form", lhs, commutator_rhs(wsp, j, c, d))
    return rep


def j_element(m: int, j: int, c: int, d: int) -> dict:
    """``J = Σ_{i=0}^{-j-1} Σ_a (E_ad t^{i+j} ⊗ E_ca t^{-i-1} - E_ca t^{i+j} ⊗ E_ad t^{-i-1})``."""
    out: dict = {}
    for i in range(-j):
        for a in range(1, m + 1):
            vterm(out, ((a, d, i + j), (c, a, -i - 1)), 1)
            vterm(out, ((c, a, i + j), (a, d, -i - 1)), -1)
    return out


def j_element_q_coordinates(m: int, j: int, c: int, d: int) -> dict:
    """``J`` in the q-basis on both tensor factors (gl basis with the I direction)."""
    first: dict = {}
    for (P, Q), v in j_element(m, j, c, d).items():
        vterm(first.setdefault((-P[2], Q), {}), (P[0], P[1]), v)
    half: dict = {}
    for (k, Q), mat in first.items():
        for qk, v in q_coordinates(mat, k, m, "gl").items():
            vterm(half.setdefault((qk, -Q[2]), {}), (Q[0], Q[1]), v)
    out: dict = {}
    for (qk, k), mat in half.items():
        for qk2, v in q_coordinates(mat, k, m, "gl").items():
            vterm(out, (qk, qk2), v)
    return out


def omega_op(wsp: WSpace, r: int, tensor: dict) -> LinOp:
    """``ω_r(P ⊗ Q) = θ_r(P) θ_1(Q)``; ``θ_r`` is the r-th loop factor for
    ``r <= N`` and the module action for ``r = N + 1``."""
    n, module = wsp.n, wsp.module

    def theta_r(r, g, key):
        e, w, mk = key
        a, b, j = g
        if r <= n:
            return {(shift_exp(e, r, j), _sub(w, r, a), mk): 1} if w[r - 1] == b else {}
        return {(e, w, mk2): v for mk2, v in module.act({g: 1}, mk).items()}

    def fn(key):
        out: dict = {}
        for (P, Q), v in tensor.items():
            for k2, c2 in theta_r(1, Q, key).items():
                for k3, c3 in theta_r(r, P, k2).items():
                    vterm(out, k3, v * c2 * c3)
        return out
    return LinOp(fn, f"ω{r}", wsp.space)


def j_element_check(wsp: WSpace, j: int, c: int, d: int, keys, check_level: bool = True) -> CheckReport:
    if j >= 0:
        raise ValueError("j must be negative")
    _require_level(wsp, check_level)
    keys = list(keys)
    n, m = wsp.n, wsp.m
    rep = CheckReport("ast_j_element", {"m": m, "N": n, "kappa": wsp.kappa, "level": wsp.level,
                                        "flavor": wsp.flavor, "j": j, "c": c, "d": d,
                                        "keys": len(keys)})
    J = j_element(m, j, c, d)
    coords = j_element_q_coordinates(m, j, c, d)
    trace_terms = {k: v for k, v in coords.items()
                   if k[0][1] == k[0][2] == m or k[1][1] == k[1][2] == m}
    rep.record("J lies in q_sl ⊗ q_sl", (j, c, d), not trace_terms, expected={}, actual=trace_terms)
    shift = (j if c == d else 0) - _trace_shift(wsp, j, c, d)

    def scalar_fn(key):
        e, w, mk = key
        return {(shift_exp(e, 1, j - 1), w, mk): shift} if shift else {}
    total = lin_sum([omega_op(wsp, r, J) for r in range(1, n + 2)]
                    + [LinOp(scalar_fn, "δ term", wsp.space, memo=False)])
    lhs = commutator(wsp.Y(1), wsp.theta({(c, d, j): 1}))
    check = _checker(rep, keys)
    check(f"Σ ω_r(J) + δ term = [Y1, θ(E{c}{d} t^{j})]", total, lhs)

    def omega1_closed(key):
        e, w, mk = key
        out: dict = {}
        e1 = shift_exp(e, 1, j - 1)
        if w[0] == d:
            vterm(out, (e1, _sub(w, 1, c), mk), m * j)
        if c == d:
            vterm(out, (e1, w, mk), -j)
        return out
    check("ω_1(J) = j x1^(j-1) (m E_cd^(1) - δ_cd)", omega_op(wsp, 1, J),
          LinOp(omega1_closed, "ω1 closed", wsp.space, memo=False))
    return rep
