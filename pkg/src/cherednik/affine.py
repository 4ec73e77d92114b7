"""Affine Lie algebras gl_m^ and sl_m^ and their smooth parabolically induced modules.

A loop generator ``E_ab t^j`` is the tuple ``(a, b, j)``; the central element is
``"C"``.  Lie algebra elements are dicts over these keys.

Negative-mode elements are expanded in a q-basis with keys ``(k, a, b)``:

* ``a != b``: ``E_ab t^{-k}``
* ``a == b < m``: ``H_a t^{-k}`` with ``H_a = E_aa - E_{a+1,a+1}``
* ``a == b == m``: ``I t^{-k}``, gl flavor only.

The ``I t^{-k}`` commute with every negative-mode element, so the sl part of
``q`` is simply the span of the other keys.  PBW monomials are sorted tuples
of q-keys and an induced basis vector is ``(monomial, base index)``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Dict, List, Tuple

from .glmod import GlModule
from .linops import CheckReport, LinOp, vadd, vclean, vscale, vterm

CENTRAL = "C"
FLAVORS = ("gl", "sl")


class TraceError(ValueError):
    """A negative-mode trace direction was requested in sl flavor."""


# -- structure constants ------------------------------------------------------

def affine_bracket(g1, g2) -> dict:
    """``[E_ab t^i, E_cd t^j] = δ_bc E_ad t^{i+j} - δ_da E_cb t^{i+j} + i δ_{i,-j} δ_ad δ_bc C``."""
    if g1 == CENTRAL or g2 == CENTRAL:
        return {}
    a, b, i = g1
    c, d, j = g2
    out: dict = {}
    if b == c:
        vterm(out, (a, d, i + j), 1)
    if d == a:
        vterm(out, (c, b, i + j), -1)
    if i + j == 0 and a == d and b == c and i:
        vterm(out, CENTRAL, i)
    return out


def lie_bracket(x: dict, y: dict) -> dict:
    out: dict = {}
    for g1, c1 in x.items():
        for g2, c2 in y.items():
            vadd(out, affine_bracket(g1, g2), c1 * c2)
    return out


def generator(a: int, b: int, j: int) -> dict:
    return {(a, b, j): 1}


def cartan(a: int, j: int) -> dict:
    """``(E_aa - E_{a+1,a+1}) t^j``."""
    return {(a, a, j): 1, (a + 1, a + 1, j): -1}


def loop_generators(m: int, lo: int, hi: int, flavor: str = "gl", central: bool = True) -> List[dict]:
    """Basis of the loop algebra in modes ``lo..hi`` (plus ``C``)."""
    _flavor(flavor)
    gens = []
    for j in range(lo, hi + 1):
        for a, b in product(range(1, m + 1), repeat=2):
            if a != b or flavor == "gl":
                gens.append(generator(a, b, j))
        if flavor == "sl":
            gens.extend(cartan(a, j) for a in range(1, m))
    if central:
        gens.append({CENTRAL: 1})
    return gens


def _flavor(flavor: str) -> str:
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
    return flavor


# -- the q-basis ----------------------------------------------------------------

def q_basis(flavor: str, m: int, depth_bound: int) -> List[tuple]:
    """Negative-mode basis keys with ``k <= depth_bound`` in PBW order."""
    _flavor(flavor)
    if depth_bound < 1:
        raise ValueError("depth_bound >= 1")
    out = []
    for k in range(1, depth_bound + 1):
        for a, b in product(range(1, m + 1), repeat=2):
            if a != b or a < m or flavor == "gl":
                out.append((k, a, b))
    return out


def is_trace_key(qk: tuple, m: int) -> bool:
    return qk[1] == qk[2] == m


def qkey_lie(qk: tuple, m: int) -> dict:
    k, a, b = qk
    if a != b:
        return {(a, b, -k): 1}
    if a < m:
        return cartan(a, -k)
    return {(c, c, -k): 1 for c in range(1, m + 1)}


def q_coordinates(mat: Dict[Tuple[int, int], Fraction], k: int, m: int, flavor: str) -> dict:
    """Expand ``Σ c_ab E_ab t^{-k}`` in the q-basis."""
    out: dict = {}
    diag = [Fraction(mat.get((a, a), 0)) for a in range(1, m + 1)]
    trace = sum(diag, Fraction(0)) / m
    for (a, b), c in mat.items():
        if a != b and c:
            vterm(out, (k, a, b), c)
    running = Fraction(0)
    for a in range(1, m):
        running += diag[a - 1] - trace
        if running:
            out[(k, a, a)] = running
    if trace:
        if flavor == "sl":
            raise TraceError(f"trace direction I t^{-k} is not in the sl loop algebra")
        out[(k, m, m)] = trace
    return out


def key_depth(mkey) -> int:
    return sum(qk[0] for qk in mkey[0])


# -- induced modules ------------------------------------------------------------

class InducedModule:
    """``U(q) ⊗ U`` induced from ``g[t] ⊕ C·C`` acting on ``U`` through mode 0.

    Positive modes kill ``1 ⊗ U`` and ``C`` acts by ``level``.  In sl flavor
    only the sl part of ``q`` is free.
    """

    def __init__(self, base: GlModule, level, flavor: str = "gl"):
        self.base = base
        self.m = base.m
        self.level = Fraction(level)
        self.flavor = _flavor(flavor)
        self._insert: dict = {}
        self._gen: dict = {}
        self._qbr: dict = {}
        self._one: dict = {}

    def __repr__(self):
        return f"InducedModule({self.base.name}, level={self.level}, {self.flavor})"

    def with_level(self, level) -> "InducedModule":
        return InducedModule(self.base, level, self.flavor)

    # basis
    def keys(self, depth: int) -> List[tuple]:
        """All basis keys of depth at most ``depth``."""
        basis = q_basis(self.flavor, self.m, depth) if depth >= 1 else []
        monos = [()]

        def grow(prefix, start, left):
            for i in range(start, len(basis)):
                qk = basis[i]
                if qk[0] <= left:
                    mono = prefix + (qk,)
                    monos.append(mono)
                    grow(mono, i, left - qk[0])
        grow((), 0, depth)
        return [(mono, u) for mono in monos for u in range(self.base.dim)]

    # q x q brackets
    def q_bracket(self, x: tuple, y: tuple) -> dict:
        key = (x, y)
        out = self._qbr.get(key)
        if out is None:
            br = lie_bracket(qkey_lie(x, self.m), qkey_lie(y, self.m))
            mat = {(a, b): c for (a, b, _j), c in br.items()}
            out = q_coordinates(mat, x[0] + y[0], self.m, self.flavor) if mat else {}
            self._qbr[key] = out
        return out

    def insert(self, qk: tuple, mkey) -> dict:
        """Left multiplication by a q-basis element, normal ordered."""
        memo = (qk, mkey)
        out = self._insert.get(memo)
        if out is not None:
            return out
        mono, u = mkey
        if not mono or qk <= mono[0]:
            out = {((qk,) + mono, u): 1}
        else:
            y, rest = mono[0], mono[1:]
            out = {}
            for (mono2, u2), c in self.insert(qk, (rest, u)).items():
                vadd(out, self.insert(y, (mono2, u2)), c)
            for z, c in self.q_bracket(qk, y).items():
                vadd(out, self.insert(z, (rest, u)), c)
        self._insert[memo] = out
        return out

    def insert_vec(self, qk: tuple, vec: dict) -> dict:
        out: dict = {}
        for key, c in vec.items():
            vadd(out, self.insert(qk, key), c)
        return out

    def act_gen(self, a: int, b: int, j: int, mkey) -> dict:
        """``E_ab t^j`` with ``j >= 0`` by commuting past the PBW factors."""
        if j < 0:
            raise ValueError("act_gen handles non-negative modes; use act")
        memo = (a, b, j, mkey)
        out = self._gen.get(memo)
        if out is not None:
            return out
        mono, u = mkey
        if not mono:
            out = {((), i): c for i, c in self.base.col(a, b, u)} if j == 0 else {}
        elif j > key_depth(mkey):
            out = {}
        else:
            y, rest = mono[0], mono[1:]
            out = self.insert_vec(y, self.act_gen(a, b, j, (rest, u)))
            br = lie_bracket({(a, b, j): 1}, qkey_lie(y, self.m))
            vadd(out, self.act(br, (rest, u)))
        self._gen[memo] = out
        return out

    def _act_one(self, g, mkey) -> dict:
        memo = (g, mkey)
        out = self._one.get(memo)
        if out is None:
            out = self._one[memo] = self._act_grouped({g: 1}, mkey)
        return out

    def act(self, elem: dict, mkey) -> dict:
        """Action of an arbitrary element of the affine algebra on a basis key."""
        if len(elem) == 1:
            (g, c), = elem.items()
            if c == 1:
                return dict(self._act_one(g, mkey))
            return {k: c * v for k, v in self._act_one(g, mkey).items()} if c else {}
        return self._act_grouped(elem, mkey)

    def _act_grouped(self, elem: dict, mkey) -> dict:
        out: dict = {}
        negative: Dict[int, dict] = {}
        for g, c in elem.items():
            if not c:
                continue
            if g == CENTRAL:
                vterm(out, mkey, self.level * c)
                continue
            a, b, j = g
            if j >= 0:
                vadd(out, self.act_gen(a, b, j, mkey), c)
            else:
                vterm(negative.setdefault(-j, {}), (a, b), c)
        for k, mat in negative.items():
            for qk, c in q_coordinates(mat, k, self.m, self.flavor).items():
                vadd(out, self.insert(qk, mkey), c)
        return out

    def act_vec(self, elem: dict, vec: dict) -> dict:
        out: dict = {}
        for key, c in vec.items():
            vadd(out, self.act(elem, key), c)
        return out

    def op(self, elem: dict) -> LinOp:
        return LinOp(lambda key: self.act(elem, key), f"act{sorted(map(str, elem))}", ("V", id(self)))


def induce_affine(base: GlModule, level, flavor: str = "gl") -> InducedModule:
    return InducedModule(base, level, flavor)


def act_loop(module: InducedModule, g, vec: dict) -> dict:
    """Apply a generator (or Lie element dict) to a vector of the induced module."""
    elem = g if isinstance(g, dict) else {g: 1}
    return module.act_vec(elem, vec)


# -- checks -----------------------------------------------------------------------

def jacobi_check(m: int, lo: int = -2, hi: int = 2) -> CheckReport:
    """Jacobi identity and antisymmetry of the bracket on all generators."""
    gens = [(a, b, j) for j in range(lo, hi + 1) for a, b in product(range(1, m + 1), repeat=2)]
    gens.append(CENTRAL)
    rep = CheckReport("affine_jacobi", {"m": m, "modes": [lo, hi]})
    for x, y in product(gens, repeat=2):
        s = vadd(dict(affine_bracket(x, y)), affine_bracket(y, x))
        rep.record("antisymmetry", (x, y), not s, expected={}, actual=s)
    for x, y, z in combinations_with_replacement(gens, 3):
        X, Y, Z = {x: 1}, {y: 1}, {z: 1}
        tot = lie_bracket(X, lie_bracket(Y, Z))
        vadd(tot, lie_bracket(Y, lie_bracket(Z, X)))
        vadd(tot, lie_bracket(Z, lie_bracket(X, Y)))
        rep.record("jacobi", (x, y, z), not tot, expected={}, actual=tot)
    return rep


def representation_check(module: InducedModule, keys, lo: int = -2, hi: int = 2) -> CheckReport:
    """``g1 (g2 v) - g2 (g1 v) = [g1, g2] v`` for loop generators in modes ``lo..hi``."""
    gens = loop_generators(module.m, lo, hi, module.flavor)
    rep = CheckReport("affine_representation",
                      {"module": module.base.name, "level": module.level,
                       "flavor": module.flavor, "modes": [lo, hi]})
    keys = list(keys)
    for i, g1 in enumerate(gens):
        for g2 in gens[i + 1:]:
            br = lie_bracket(g1, g2)
            label = "[g1, g2] v"
            for key in keys:
                lhs = module.act_vec(g1, module.act(g2, key))
                vadd(lhs, module.act_vec(g2, module.act(g1, key)), -1)
                rhs = module.act(br, key)
                rep.record(label, (tuple(sorted(map(str, g1))), tuple(sorted(map(str, g2))), key),
                           vclean(lhs) == vclean(rhs), expected=rhs, actual=lhs)
    return rep


def smoothness_check(module: InducedModule, keys) -> CheckReport:
    """Modes above the depth of a key annihilate it."""
    rep = CheckReport("affine_smoothness", {"module": module.base.name, "flavor": module.flavor})
    m = module.m
    for key in keys:
        d = key_depth(key)
        for a, b in product(range(1, m + 1), repeat=2):
            out = module.act_gen(a, b, d + 1, key)
            rep.record("t^(d+1) kills depth d", key, not out, expected={}, actual=out)
    return rep
