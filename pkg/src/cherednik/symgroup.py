"""Permutations of {1..N}, the group algebra, and shuffle coset representatives."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, Iterable, List, Sequence, Tuple


class Perm:
    """A permutation in one-line notation: ``images[i-1] = s(i)``."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(1, n + 1))

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition ``(s*t)(i) = s(t(i))``."""
        if len(self) != len(other):
            raise ValueError("permutations of different sizes")
        return Perm(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Perm(inv)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Perm({list(self.images)})"

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))

    def length(self) -> int:
        im = self.images
        return sum(1 for i in range(len(im)) for j in range(i + 1, len(im)) if im[i] > im[j])

    def act_on_tuple(self, t: Sequence) -> tuple:
        """Move the entry in slot ``i`` to slot ``s(i)``.

        Used both for exponent vectors (``x_i -> x_{s(i)}``) and for words
        labelling the tensor factors.
        """
        out = [None] * len(t)
        for i, j in enumerate(self.images):
            out[j - 1] = t[i]
        return tuple(out)

    def reduced_word(self) -> List[int]:
        """Indices ``i_1..i_l`` with ``s = s_{i_1} ... s_{i_l}``, ``l = length``."""
        im = list(self.images)
        word = []
        while True:
            for i in range(len(im) - 1):
                if im[i] > im[i + 1]:
                    im[i], im[i + 1] = im[i + 1], im[i]
                    word.append(i + 1)
                    break
            else:
                break
        return word[::-1]

    def to_list(self) -> List[int]:
        return list(self.images)


def transposition(p: int, q: int, n: int) -> Perm:
    if not (1 <= p <= n and 1 <= q <= n):
        raise ValueError(f"indices {p}, {q} out of range 1..{n}")
    if p == q:
        raise ValueError("transposition needs p != q")
    im = list(range(1, n + 1))
    im[p - 1], im[q - 1] = q, p
    return Perm(im)


def simple(p: int, n: int) -> Perm:
    return transposition(p, p + 1, n)


def all_perms(n: int) -> List[Perm]:
    return [Perm(t) for t in permutations(range(1, n + 1))]


def coset_reps(k: int, n: int) -> List[Perm]:
    """The (k, n-k)-shuffles: minimal left coset representatives of Sym_{k,n-k}."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    reps = []
    for head in combinations(range(1, n + 1), k):
        tail = [i for i in range(1, n + 1) if i not in head]
        reps.append(Perm(list(head) + tail))
    return reps


def young_subgroup(k: int, n: int) -> List[Perm]:
    """Sym_{k,n-k}: permutations preserving {1..k}."""
    return [Perm(list(a) + list(b))
            for a in permutations(range(1, k + 1))
            for b in permutations(range(k + 1, n + 1))]


class GroupAlgElem:
    """Finite linear combination of permutations with rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[Perm, Fraction] | None = None):
        self.n = n
        self.terms = {s: Fraction(c) for s, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, s: Perm, c=1) -> "GroupAlgElem":
        return cls(len(s), {s: c})

    @classmethod
    def zero(cls, n: int) -> "GroupAlgElem":
        return cls(n)

    def __add__(self, other: "GroupAlgElem") -> "GroupAlgElem":
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, 0) + c
        return GroupAlgElem(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "GroupAlgElem":
        return GroupAlgElem(self.n, {s: v * c for s, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.n != other.n:
            raise ValueError("group algebra elements of different N")
        out: Dict[Perm, Fraction] = {}
        for s, a in self.terms.items():
            for t, b in other.terms.items():
                st = s * t
                out[st] = out.get(st, 0) + a * b
        return GroupAlgElem(self.n, out)

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, GroupAlgElem) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{s.to_list()}" for s, c in sorted(self.terms.items()))


def ga_multiply(a: GroupAlgElem, b: GroupAlgElem) -> GroupAlgElem:
    return a * b


def ga_transposition(p: int, q: int, n: int) -> GroupAlgElem:
    return GroupAlgElem.of(transposition(p, q, n))

