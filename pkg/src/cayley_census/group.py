"""Permutation groups backed by a base and strong generating set.

The chain is built by Schreier-Sims.  A randomized phase (seeded, so runs are
reproducible) proposes strong generators quickly; a deterministic pass over
Schreier generators then certifies the chain unless the caller supplied a
guaranteed upper bound on the order that the randomized phase already met.
Base points are chosen as the smallest point moved by the generator that
needs a new level.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

import numpy as np

from .perm import INDEX, DegreeMismatch, Permutation, arr_inverse

# explicit coset representatives are cached when orbit * degree stays below this
_EXPLICIT_LIMIT = 1 << 21


class _Level:
    """One level of a stabilizer chain: base point, strong gens, Schreier tree."""

    __slots__ = ("point", "gens", "gens_inv", "orbit", "parent", "via", "explicit", "reps", "degree")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.degree = degree
        self.gens: list[np.ndarray] = []
        self.gens_inv: list[np.ndarray] = []
        self.orbit: list[int] = [point]
        self.parent = None
        self.via = None
        self.reps: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self.explicit = True
        self._rebuild()

    def add_gen(self, g: np.ndarray) -> None:
        self.gens.append(g)
        self.gens_inv.append(arr_inverse(g))
        self._rebuild()

    def _rebuild(self) -> None:
        n = self.degree
        parent = np.full(n, -1, dtype=INDEX)
        via = np.full(n, -1, dtype=INDEX)
        b = self.point
        parent[b] = b
        orbit = [b]
        gens = self.gens
        k = 0
        while k < len(orbit):
            x = orbit[k]
            k += 1
            for si, s in enumerate(gens):
                y = int(s[x])
                if parent[y] < 0:
                    parent[y] = x
                    via[y] = si
                    orbit.append(y)
        self.orbit = orbit
        self.parent = parent
        self.via = via
        self.explicit = len(orbit) * n <= _EXPLICIT_LIMIT
        self.reps = {}
        if self.explicit:
            ident = np.arange(n, dtype=INDEX)
            self.reps[b] = (ident, ident)
            for y in orbit[1:]:
                u_par = self.reps[int(parent[y])][0]
                u = gens[via[y]][u_par]
                self.reps[y] = (u, arr_inverse(u))

    def __len__(self) -> int:
        return len(self.orbit)

    def contains_point(self, x: int) -> bool:
        return self.parent[x] >= 0

    def rep(self, x: int) -> np.ndarray:
        """Coset representative ``u`` with ``point^u = x``."""
        if self.explicit:
            return self.reps[x][0]
        path = []
        while x != self.point:
            path.append(int(self.via[x]))
            x = int(self.parent[x])
        u = np.arange(self.degree, dtype=INDEX)
        for si in reversed(path):
            u = self.gens[si][u]
        return u

    def rep_inv(self, x: int) -> np.ndarray:
        if self.explicit:
            return self.reps[x][1]
        return arr_inverse(self.rep(x))

    def divide(self, g: np.ndarray, x: int) -> np.ndarray:
        """``g * rep(x)^-1`` where ``x = point^g``."""
        if self.explicit:
            return self.reps[x][1][g]
        while x != self.point:
            g = self.gens_inv[self.via[x]][g]
            x = int(self.parent[x])
        return g


def _sift(levels: list[_Level], g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
    for i in range(start, len(levels)):
        lev = levels[i]
        x = int(g[lev.point])
        if lev.parent[x] < 0:
            return g, i
        g = lev.divide(g, x)
    return g, len(levels)


def _is_id(g: np.ndarray) -> bool:
    return bool((g == np.arange(g.shape[0])).all())


def _first_moved(g: np.ndarray) -> int:
    return int(np.nonzero(g != np.arange(g.shape[0]))[0][0])


class _ChainBuilder:
    def __init__(self, degree: int, base_prefix: Sequence[int]):
        self.degree = degree
        self.levels: list[_Level] = [_Level(int(b), degree) for b in base_prefix]

    def order(self) -> int:
        out = 1
        for lev in self.levels:
            out *= len(lev)
        return out

    def absorb(self, h: np.ndarray, j: int, first: int = 0) -> int:
        """Add residue ``h`` (sift stopped at ``j``) to levels ``first..j``."""
        if j == len(self.levels):
            self.levels.append(_Level(_first_moved(h), self.degree))
        for lv in range(first, j + 1):
            self.levels[lv].add_gen(h)
        return j

    def add_generator(self, g: np.ndarray) -> None:
        h, j = _sift(self.levels, g)
        if j == len(self.levels) and _is_id(h):
            return
        self.absorb(h, j)

    def random_phase(self, gens: list[np.ndarray], bound: int | None, seed: int,
                     patience: int) -> bool:
        if not gens:
            return True
        rng = random.Random(seed)
        # product replacement state
        state = [g.copy() for g in gens]
        while len(state) < 10:
            state.append(state[len(state) % len(gens)].copy())
        acc = np.arange(self.degree, dtype=INDEX)
        for _ in range(50):
            acc = self._pr_step(state, acc, rng)
        quiet = 0
        while quiet < patience:
            if bound is not None and self.order() >= bound:
                break
            acc = self._pr_step(state, acc, rng)
            h, j = _sift(self.levels, acc)
            if j == len(self.levels) and _is_id(h):
                quiet += 1
                continue
            quiet = 0
            self.absorb(h, j)
        if bound is not None:
            o = self.order()
            if o > bound:
                raise ValueError(f"group order {o} exceeds the supplied bound {bound}")
            return o == bound
        return False

    @staticmethod
    def _pr_step(state, acc, rng):
        i, j = rng.sample(range(len(state)), 2)
        if rng.random() < 0.5:
            state[i] = state[j][state[i]]
        else:
            state[i] = state[i][state[j]]
        return state[i][acc]

    def verify(self, top_gens: list[np.ndarray]) -> None:
        """Deterministic Schreier-Sims pass; extends the chain until complete."""
        levels = self.levels
        i = len(levels) - 1
        while i >= 0:
            lev = levels[i]
            src_gens = top_gens if i == 0 and top_gens else lev.gens
            restart = False
            for x in list(lev.orbit):
                u = lev.rep(x)
                for si, s in enumerate(src_gens):
                    if src_gens is lev.gens:
                        y = int(s[x])
                        if lev.parent[y] == x and lev.via[y] == si and y != lev.point:
                            continue
                    g = s[u]
                    y = int(g[lev.point])
                    g = lev.divide(g, y)
                    h, j = _sift(levels, g, i + 1)
                    if j == len(levels) and _is_id(h):
                        continue
                    i = self.absorb(h, j, i + 1)
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    def trim(self, keep: int) -> None:
        while len(self.levels) > keep and not self.levels[-1].gens:
            self.levels.pop()


class PermutationGroup:
    """A permutation group with a complete stabilizer chain.

    ``base`` is a prefix that the chain must start with (points may be
    redundant).  ``order_bound`` is a *guaranteed* upper bound on the order;
    when the randomized phase meets it the chain is complete without the
    deterministic pass.
    """

    def __init__(self, generators: Iterable[Permutation | Sequence[int]], *, degree: int | None = None,
                 base: Sequence[int] = (), order_bound: int | None = None, seed: int = 0):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("empty generator list needs an explicit degree")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} differs from {degree}")
        self.degree = degree
        self.generators = gens
        arrs = [g.array for g in gens if not g.is_identity()]
        builder = _ChainBuilder(degree, list(base))
        for a in arrs:
            if all(a[lev.point] == lev.point for lev in builder.levels):
                builder.levels.append(_Level(_first_moved(a), degree))
        patience = 30 if degree <= 64 else 12
        done = builder.random_phase(arrs, order_bound, seed, patience)
        if not done:
            builder.verify(arrs)
        builder.trim(len(base))
        self._levels = builder.levels
        self._order = builder.order()

    @classmethod
    def _from_levels(cls, degree: int, levels: list[_Level], gens: list[Permutation]) -> "PermutationGroup":
        G = cls.__new__(cls)
        G.degree = degree
        G.generators = gens
        G._levels = levels
        o = 1
        for lev in levels:
            o *= len(lev)
        G._order = o
        return G

    # basic queries -----------------------------------------------------

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    @property
    def base(self) -> list[int]:
        return [lev.point for lev in self._levels]

    @property
    def levels(self) -> list[_Level]:
        return self._levels

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = {}
        for lev in self._levels:
            for g in lev.gens:
                seen.setdefault(g.tobytes(), g)
        return [Permutation._raw(g) for g in seen.values()]

    def basic_orbit_lengths(self) -> list[int]:
        return [len(lev) for lev in self._levels]

    def is_trivial(self) -> bool:
        return self._order == 1

    def sift(self, p: Permutation) -> tuple[Permutation, int]:
        h, j = _sift(self._levels, p.array)
        return Permutation._raw(h), j

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"degree {p.degree} vs group degree {self.degree}")
        h, j = _sift(self._levels, p.array)
        return j == len(self._levels) and _is_id(h)

    __contains__ = contains

    def contains_array(self, a: np.ndarray) -> bool:
        h, j = _sift(self._levels, a)
        return j == len(self._levels) and _is_id(h)

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    # orbits ------------------------------------------------------------

    def orbit(self, pt: int) -> list[int]:
        seen = {pt}
        out = [pt]
        arrs = [g.array for g in self.generators]
        k = 0
        while k < len(out):
            x = out[k]
            k += 1
            for a in arrs:
                y = int(a[x])
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return sorted(out)

    def orbits(self) -> list[list[int]]:
        """Partition of the points into orbits, blocks sorted, ordered by minimum."""
        label = np.full(self.degree, -1, dtype=INDEX)
        out = []
        for p in range(self.degree):
            if label[p] >= 0:
                continue
            orb = self.orbit(p)
            label[orb] = len(out)
            out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    # chain manipulation --------------------------------------------------

    def rebased(self, prefix: Sequence[int]) -> "PermutationGroup":
        """Same group with a chain whose base starts with ``prefix``."""
        prefix = [int(p) for p in prefix]
        if self.base[: len(prefix)] == prefix:
            return self
        src = self.strong_generators or [self.identity()]
        G = PermutationGroup(src, degree=self.degree, base=prefix, order_bound=self._order)
        G.generators = self.generators
        return G

    def point_stabilizer(self, pt: int) -> "PermutationGroup":
        if not 0 <= pt < self.degree:
            raise ValueError(f"point {pt} outside degree {self.degree}")
        G = self.rebased([pt])
        sub = G._levels[1:]
        gens = [Permutation._raw(g) for g in sub[0].gens] if sub else []
        if not gens:
            return PermutationGroup([], degree=self.degree)
        return PermutationGroup._from_levels(self.degree, sub, gens)

    def pointwise_stabilizer(self, pts: Sequence[int]) -> "PermutationGroup":
        G = self.rebased(list(pts))
        sub = G._levels[len(pts):]
        gens = [Permutation._raw(g) for g in sub[0].gens] if sub else []
        if not gens:
            return PermutationGroup([], degree=self.degree)
        return PermutationGroup._from_levels(self.degree, sub, gens)

    # elements ----------------------------------------------------------

    def element_array(self, limit: int = 5_000_000, dtype=None) -> np.ndarray:
        """All elements as rows, in stabilizer-chain transversal order."""
        if self._order > limit:
            raise ValueError(f"group of order {self._order} too large to enumerate (limit {limit})")
        if dtype is None:
            dtype = np.int16 if self.degree < 32768 else INDEX
        E = np.arange(self.degree, dtype=dtype)[None, :]
        for lev in reversed(self._levels):
            U = np.stack([lev.rep(x) for x in sorted(lev.orbit)]).astype(dtype)
            E = U[:, E].reshape(-1, self.degree)
        return E

    def elements(self, limit: int = 5_000_000) -> list[Permutation]:
        return [Permutation._raw(r.astype(INDEX)) for r in self.element_array(limit)]

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements())

    def random_element(self, rng: random.Random | np.random.Generator) -> Permutation:
        g = np.arange(self.degree, dtype=INDEX)
        for lev in reversed(self._levels):
            if isinstance(rng, random.Random):
                x = lev.orbit[rng.randrange(len(lev.orbit))]
            else:
                x = lev.orbit[int(rng.integers(len(lev.orbit)))]
            g = lev.rep(x)[g]
        return Permutation._raw(g)

    def transversal(self, level: int) -> dict[int, Permutation]:
        lev = self._levels[level]
        return {x: Permutation._raw(lev.rep(x)) for x in lev.orbit}

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, order={self._order}, ngens={len(self.generators)})"


def build_group(gens: Sequence[Permutation]) -> PermutationGroup:
    """Schreier-Sims on ``gens``; raises on an empty list."""
    if not gens:
        raise ValueError("build_group needs at least one generator")
    return PermutationGroup(gens)


def group_order(G: PermutationGroup) -> int:
    return G.order()


def contains(G: PermutationGroup, p: Permutation) -> bool:
    return G.contains(p)


def orbits(G: PermutationGroup) -> list[list[int]]:
    return G.orbits()


def point_stabilizer(G: PermutationGroup, pt: int) -> PermutationGroup:
    return G.point_stabilizer(pt)


def naive_closure(gens: Sequence[Permutation], limit: int = 100_000) -> set[Permutation]:
    """Brute-force closure by BFS over right multiplication; test oracle."""
    if not gens:
        raise ValueError("need generators")
    ident = Permutation.identity(gens[0].degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise ValueError("closure exceeds limit")
        frontier = nxt
    return seen
