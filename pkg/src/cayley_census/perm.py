"""Permutations on ``{0, ..., n-1}``.

Convention used everywhere in the package: permutations act on the right and
products are read left to right, so ``(p * q)(i) = q(p(i))``.  Conjugation is
``h ** g = g^-1 h g``.  Externally (files, reprs) points are 1-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

INDEX = np.intp


class DegreeMismatch(ValueError):
    pass


class Permutation:
    """An immutable bijection of ``range(degree)``."""

    __slots__ = ("_a", "_hash")

    def __init__(self, images: Sequence[int] | np.ndarray, *, check: bool = True):
        a = np.array(images, dtype=INDEX)
        if a.ndim != 1:
            raise ValueError("images must be one-dimensional")
        if check:
            n = a.shape[0]
            if n == 0:
                raise ValueError("degree must be positive")
            seen = np.zeros(n, dtype=bool)
            if a.min() < 0 or a.max() >= n:
                raise ValueError("image out of range")
            seen[a] = True
            if not seen.all():
                raise ValueError("images do not form a bijection")
        a.setflags(write=False)
        self._a = a
        self._hash = None

    @classmethod
    def _raw(cls, a: np.ndarray) -> "Permutation":
        p = cls.__new__(cls)
        if a.flags.writeable:
            a = a.copy()
            a.setflags(write=False)
        p._a = a
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(np.arange(degree, dtype=INDEX))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int], one_based: bool = True) -> "Permutation":
        a = np.arange(degree, dtype=INDEX)
        off = 1 if one_based else 0
        seen: set[int] = set()
        for cyc in cycles:
            pts = [c - off for c in cyc]
            if len(set(pts)) != len(pts) or seen.intersection(pts):
                raise ValueError(f"cycles are not disjoint: {cycles!r}")
            seen.update(pts)
            for i, p in enumerate(pts):
                if not 0 <= p < degree:
                    raise ValueError(f"point {p + off} outside degree {degree}")
                a[p] = pts[(i + 1) % len(pts)]
        return cls._raw(a)

    @property
    def degree(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Read-only image array; ``array[i]`` is the image of ``i``."""
        return self._a

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a)

    def __call__(self, i: int) -> int:
        return int(self._a[i])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k):
        if isinstance(k, Permutation):
            return conjugate(self, k)
        return power(self, k)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and bool(np.array_equal(self._a, other._a))

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._a.tobytes())
        return self._hash

    def key(self) -> bytes:
        return self._a.tobytes()

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._a, np.arange(self.degree)))

    def support(self) -> list[int]:
        return [int(i) for i in np.nonzero(self._a != np.arange(self.degree))[0]]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its smallest point."""
        a = self._a
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for i in range(self.degree):
            if seen[i] or a[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = int(a[i])
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = int(a[j])
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm
        return lcm(1, *(len(c) for c in self.cycles()))

    def cycle_type(self) -> "CycleType":
        return cycle_type(self)

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return f"Permutation.identity({self.degree})"
        body = "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cyc)
        return f"Permutation<{self.degree}>{body}"


@dataclass(frozen=True)
class CycleType:
    """Sorted multiset of cycle lengths (fixed points included as 1-cycles)."""

    lengths: tuple[int, ...]

    @property
    def fixed_points(self) -> int:
        return sum(1 for x in self.lengths if x == 1)

    def as_counter(self) -> dict[int, int]:
        return dict(sorted(Counter(self.lengths).items()))

    def __str__(self) -> str:
        return " ".join(f"{k}^{v}" for k, v in self.as_counter().items())


def _check(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise DegreeMismatch(f"degree mismatch: {p.degree} vs {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``i -> q(p(i))``."""
    _check(p, q)
    return Permutation._raw(q._a[p._a])


def inverse(p: Permutation) -> Permutation:
    inv = np.empty_like(p._a)
    inv[p._a] = np.arange(p.degree, dtype=INDEX)
    return Permutation._raw(inv)


def conjugate(h: Permutation, g: Permutation) -> Permutation:
    """``g^-1 h g``; maps ``i^g`` to ``(i^h)^g``."""
    _check(h, g)
    out = np.empty_like(h._a)
    out[g._a] = g._a[h._a]
    return Permutation._raw(out)


def power(p: Permutation, k: int) -> Permutation:
    a = p._a
    if k < 0:
        a = inverse(p)._a
        k = -k
    result = np.arange(p.degree, dtype=INDEX)
    base = a
    while k:
        if k & 1:
            result = base[result]
        base = base[base]
        k >>= 1
    return Permutation._raw(result)


def cycle_type(p: Permutation) -> CycleType:
    lengths = [len(c) for c in p.cycles()]
    lengths += [1] * (p.degree - sum(lengths))
    return CycleType(tuple(sorted(lengths)))


def random_permutation(degree: int, rng: np.random.Generator) -> Permutation:
    return Permutation._raw(rng.permutation(degree).astype(INDEX))


def as_permutation(x: Permutation | Sequence[int] | np.ndarray) -> Permutation:
    if isinstance(x, Permutation):
        return x
    return Permutation(x)


def parse_images(tokens: Iterable[str], degree: int) -> Permutation:
    """Parse 1-based image tokens."""
    vals = [int(t) - 1 for t in tokens]
    if len(vals) != degree:
        raise ValueError(f"expected {degree} images, got {len(vals)}")
    return Permutation(vals)


def format_images(p: Permutation) -> str:
    return " ".join(str(int(x) + 1) for x in p.array)


# raw-array helpers used by the hot paths -------------------------------------

def arr_compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return b[a]


def arr_inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(a.shape[0], dtype=a.dtype)
    return inv


def arr_is_identity(a: np.ndarray) -> bool:
    return bool((a == np.arange(a.shape[0])).all())
