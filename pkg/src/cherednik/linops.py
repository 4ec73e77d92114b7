"""Sparse vectors on hashable basis keys, locally finite operators, identity checks.

A vector is a plain ``dict`` from basis key to a nonzero scalar.  An operator
is a :class:`LinOp` wrapping a function ``key -> dict``; results of base
operators are memoized, so callers must treat returned dicts as read-only.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Sequence

Vec = Dict[Hashable, Any]

EXHAUSTIVE_LIMIT = 10_000


class SpaceMismatch(ValueError):
    pass


def vadd(acc: Vec, vec: Vec, c=1) -> Vec:
    """``acc += c * vec`` in place, dropping zeros."""
    if not c:
        return acc
    for k, v in vec.items():
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def vterm(acc: Vec, key, c) -> None:
    s = acc.get(key, 0) + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def vscale(vec: Vec, c) -> Vec:
    if not c:
        return {}
    return {k: v * c for k, v in vec.items()}


def vsub(a: Vec, b: Vec) -> Vec:
    return vadd(dict(a), b, -1)


def vclean(vec: Vec) -> Vec:
    return {k: v for k, v in vec.items() if v}


class LinOp:
    """A locally finite linear operator given by its values on basis keys."""

    def __init__(self, fn: Callable[[Hashable], Vec], name: str = "op",
                 space: Any = None, memo: bool = True):
        self.fn = fn
        self.name = name
        self.space = space
        self._cache: Optional[dict] = {} if memo else None

    def __repr__(self):
        return f"LinOp({self.name})"

    def __call__(self, key) -> Vec:
        cache = self._cache
        if cache is None:
            return self.fn(key)
        out = cache.get(key)
        if out is None:
            out = cache[key] = self.fn(key)
        # callers may mutate the result
        return dict(out)

    def apply(self, vec: Vec) -> Vec:
        out: Vec = {}
        for k, c in vec.items():
            vadd(out, self(k), c)
        return out

    def _space_with(self, other: "LinOp"):
        if self.space is not None and other.space is not None and self.space != other.space:
            raise SpaceMismatch(f"{self.name} acts on {self.space}, {other.name} on {other.space}")
        return self.space if self.space is not None else other.space

    def __add__(self, other: "LinOp") -> "LinOp":
        space = self._space_with(other)

        def fn(key):
            return vadd(dict(self(key)), other(key))
        return LinOp(fn, f"({self.name} + {other.name})", space, memo=False)

    def __sub__(self, other: "LinOp") -> "LinOp":
        space = self._space_with(other)

        def fn(key):
            return vadd(dict(self(key)), other(key), -1)
        return LinOp(fn, f"({self.name} - {other.name})", space, memo=False)

    def scale(self, c) -> "LinOp":
        def fn(key):
            return vscale(self(key), c)
        return LinOp(fn, f"{c}*{self.name}", self.space, memo=False)

    def __rmul__(self, c) -> "LinOp":
        return self.scale(c)

    def __neg__(self) -> "LinOp":
        return self.scale(-1)

    def __matmul__(self, other: "LinOp") -> "LinOp":
        """Composition: ``(A @ B)(v) = A(B(v))``."""
        space = self._space_with(other)

        def fn(key):
            return self.apply(other(key))
        return LinOp(fn, f"{self.name}∘{other.name}", space, memo=False)


def identity_op(space=None) -> LinOp:
    return LinOp(lambda k: {k: 1}, "id", space, memo=False)


def zero_op(space=None) -> LinOp:
    return LinOp(lambda k: {}, "0", space, memo=False)


def scalar_op(c, space=None) -> LinOp:
    c = Fraction(c)
    return LinOp(lambda k: {k: c} if c else {}, str(c), space, memo=False)


def commutator(a: LinOp, b: LinOp) -> LinOp:
    space = a._space_with(b)

    def fn(key):
        return vadd(a.apply(b(key)), b.apply(a(key)), -1)
    return LinOp(fn, f"[{a.name}, {b.name}]", space, memo=False)


def lin_sum(ops: Iterable[LinOp], name: str | None = None) -> LinOp:
    ops = list(ops)
    space = None
    for o in ops:
        if space is not None and o.space is not None and o.space != space:
            raise SpaceMismatch("sum of operators on different spaces")
        space = space if space is not None else o.space

    def fn(key):
        out: Vec = {}
        for o in ops:
            vadd(out, o(key))
        return out
    return LinOp(fn, name or " + ".join(o.name for o in ops), space, memo=False)


def op_algebra(expr) -> LinOp:
    """Evaluate a nested tuple expression over handles.

    Forms: ``LinOp``, ``("+", e1, e2, ...)``, ``("*", scalar, e)``,
    ``("@", e1, e2)`` and ``("[]", e1, e2)``.
    """
    if isinstance(expr, LinOp):
        return expr
    tag, *args = expr
    if tag == "+":
        return lin_sum(op_algebra(a) for a in args)
    if tag == "*":
        return op_algebra(args[1]).scale(args[0])
    if tag == "@":
        return op_algebra(args[0]) @ op_algebra(args[1])
    if tag == "[]":
        return commutator(op_algebra(args[0]), op_algebra(args[1]))
    raise ValueError(f"unknown operator expression tag {tag!r}")


# -- rendering ----------------------------------------------------------------

def render(obj):
    """JSON-ready form: fractions become exact strings, tuples become lists."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, dict):
        return [[render(k), render(v)] for k, v in sorted(obj.items(), key=lambda kv: repr(kv[0]))]
    if isinstance(obj, (tuple, list)):
        return [render(x) for x in obj]
    if hasattr(obj, "to_list"):
        return obj.to_list()
    return repr(obj)


# -- reports ------------------------------------------------------------------

@dataclass
class Failure:
    check: str
    key: Any
    expected: Any
    actual: Any

    def to_dict(self):
        return {"check": self.check, "key": render(self.key),
                "expected": render(self.expected), "actual": render(self.actual)}


@dataclass
class CheckReport:
    """Outcome of a battery of exact checks; passes iff no check failed."""
    name: str
    params: Dict[str, Any] = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)
    failures: List[Failure] = field(default_factory=list)
    failure_counts: Dict[str, int] = field(default_factory=dict)
    max_recorded: int = 20

    @property
    def instances(self) -> int:
        return sum(self.counts.values())

    @property
    def failure_count(self) -> int:
        return sum(self.failure_counts.values())

    @property
    def status(self) -> str:
        return "pass" if self.failure_count == 0 else "fail"

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def record(self, check: str, key, ok: bool, expected=None, actual=None) -> bool:
        self.counts[check] = self.counts.get(check, 0) + 1
        if not ok:
            n = self.failure_counts.get(check, 0)
            self.failure_counts[check] = n + 1
            if n < self.max_recorded:
                self.failures.append(Failure(check, key, expected, actual))
        return ok

    def expect_witness(self, check: str, witness, detail=None) -> bool:
        """Negative control: passes iff a witness of failure was found."""
        ok = witness is not None
        self.record(check, witness, ok, expected="a witness", actual=detail if ok else "none found")
        return ok

    def merge(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for k, v in other.counts.items():
            self.counts[prefix + k] = self.counts.get(prefix + k, 0) + v
        for k, v in other.failure_counts.items():
            self.failure_counts[prefix + k] = self.failure_counts.get(prefix + k, 0) + v
        for f in other.failures:
            self.failures.append(Failure(prefix + f.check, f.key, f.expected, f.actual))
        return self

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "params": render(self.params),
            "status": self.status,
            "instances": self.instances,
            "checks": {k: {"instances": v, "failures": self.failure_counts.get(k, 0)}
                       for k, v in sorted(self.counts.items())},
            "failures": [f.to_dict() for f in self.failures],
        }

    def summary(self) -> str:
        lines = [f"{self.name}: {self.status.upper()} ({self.instances} instances)"]
        for k, v in sorted(self.counts.items()):
            nf = self.failure_counts.get(k, 0)
            lines.append(f"  {'ok  ' if not nf else 'FAIL'} {k}: {v} instances"
                         + (f", {nf} failures" if nf else ""))
        for f in self.failures[:5]:
            lines.append(f"    witness {f.check}: key={render(f.key)}")
        return "\n".join(lines)


def check_identity(lhs: LinOp, rhs: LinOp, keys: Sequence, name: str | None = None,
                   report: CheckReport | None = None) -> CheckReport:
    """Apply both sides to every key and compare exactly."""
    lhs._space_with(rhs)
    name = name or f"{lhs.name} == {rhs.name}"
    report = report if report is not None else CheckReport(name)
    for key in keys:
        a, b = lhs(key), rhs(key)
        report.record(name, key, vclean(a) == vclean(b), expected=b, actual=a)
    return report


def first_witness(lhs: LinOp, rhs: LinOp, keys: Sequence):
    for key in keys:
        if vclean(lhs(key)) != vclean(rhs(key)):
            return key
    return None


# -- bases --------------------------------------------------------------------

class TensorSpace:
    """Basis ``e_w ⊗ u_j`` of ``(C^m)^{⊗N} ⊗ U``; keys ``(word, j)``, letters 1-based."""

    def __init__(self, m: int, n: int, dim: int, tag: str = "tensor"):
        self.m, self.n, self.dim, self.tag = m, n, dim, tag

    def __eq__(self, other):
        return isinstance(other, TensorSpace) and (self.m, self.n, self.dim, self.tag) == (
            other.m, other.n, other.dim, other.tag)

    def __hash__(self):
        return hash((self.m, self.n, self.dim, self.tag))

    def __repr__(self):
        return f"TensorSpace(m={self.m}, N={self.n}, dim={self.dim})"

    def keys(self):
        for w in product(range(1, self.m + 1), repeat=self.n):
            for j in range(self.dim):
                yield (w, j)


class PolySpace:
    """Monomials ``x^e`` with ``e >= 0`` and total degree at most ``degree``."""

    def __init__(self, n: int, degree: int):
        self.n, self.degree = n, degree

    def __repr__(self):
        return f"PolySpace(N={self.n}, degree<={self.degree})"

    def keys(self):
        for e in product(range(self.degree + 1), repeat=self.n):
            if sum(e) <= self.degree:
                yield e


class LaurentSpace:
    """Laurent monomials with every exponent in ``[lo, hi]``."""

    def __init__(self, n: int, lo: int, hi: int):
        self.n, self.lo, self.hi = n, lo, hi

    def __repr__(self):
        return f"LaurentSpace(N={self.n}, window=[{self.lo},{self.hi}])"

    def keys(self):
        return product(range(self.lo, self.hi + 1), repeat=self.n)


def sample_basis(space, count: int, seed: int = 0, limit: int = EXHAUSTIVE_LIMIT) -> list:
    """Deterministic sample of basis keys; exhaustive when the window is small.

    ``space`` is anything with a ``keys()`` iterator (or an iterable of keys).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    keys = list(space.keys() if hasattr(space, "keys") else space)
    if not keys:
        raise ValueError("empty bounded basis")
    if len(keys) <= limit or count >= len(keys):
        return keys
    return random.Random(seed).sample(keys, count)
