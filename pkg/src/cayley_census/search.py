"""Backtrack searches over a stabilizer chain.

The workhorse is a search for elements ``g`` of a group with
``x_j^g = y_j`` for given tuples of permutations.  Ordering the base so that
each point after the first of a ``<x_1, ..., x_m>``-orbit is the image of an
earlier point under some ``x_j`` means the image of that point is forced
(``(q^x)^g = (q^g)^y``), so only one level per orbit branches.  Centralizers,
element conjugacy, and subgroup normalizers/transporters are built on it.
Subgroups too large to enumerate fall back to a plain backtrack that only
prunes with orbit structure.
"""

from __future__ import annotations

import random
from typing import Callable, Iterator, Sequence

import numpy as np

from .group import PermutationGroup, _Level
from .perm import INDEX, DegreeMismatch, Permutation

ENUM_LIMIT = 200_000


def _cycle_lengths(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    out = np.zeros(n, dtype=INDEX)
    for i in range(n):
        if out[i]:
            continue
        cyc = [i]
        j = int(a[i])
        while j != i:
            cyc.append(j)
            j = int(a[j])
        out[cyc] = len(cyc)
    return out


def _point_signatures(arrs: list[np.ndarray], n: int) -> list[tuple]:
    """Per point: size of its orbit under the tuple and cycle lengths of each entry."""
    lens = [_cycle_lengths(a) for a in arrs]
    orbit_size = np.zeros(n, dtype=INDEX)
    seen = np.zeros(n, dtype=bool)
    for p in range(n):
        if seen[p]:
            continue
        orb = [p]
        seen[p] = True
        k = 0
        while k < len(orb):
            x = orb[k]
            k += 1
            for a in arrs:
                y = int(a[x])
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        orbit_size[orb] = len(orb)
    return [(int(orbit_size[p]),) + tuple(int(L[p]) for L in lens) for p in range(n)]


def _forced_base(arrs: list[np.ndarray], n: int) -> tuple[list[int], dict[int, tuple[int, int]]]:
    """Base ordering orbit by orbit; ``how[p] = (q, j)`` records ``p = q^{x_j}``."""
    placed = np.zeros(n, dtype=bool)
    orbits = []
    for p in range(n):
        if placed[p]:
            continue
        orb = [p]
        placed[p] = True
        k = 0
        while k < len(orb):
            x = orb[k]
            k += 1
            for a in arrs:
                y = int(a[x])
                if not placed[y]:
                    placed[y] = True
                    orb.append(y)
        orbits.append(orb)
    orbits.sort(key=lambda o: (-len(o), o[0]))
    order: list[int] = []
    how: dict[int, tuple[int, int]] = {}
    for orb in orbits:
        start = orb[0]
        order.append(start)
        done = {start}
        k = len(order) - 1
        while k < len(order):
            x = order[k]
            k += 1
            for j, a in enumerate(arrs):
                y = int(a[x])
                if y not in done:
                    done.add(y)
                    how[y] = (x, j)
                    order.append(y)
    return order, how


def _active_depth(levels: list[_Level]) -> int:
    depth = 0
    for i, lev in enumerate(levels):
        if lev.gens:
            depth = i + 1
    return depth


class ConjugationSearch:
    """Elements ``g`` of ``G`` with ``xs[j]^g == ys[j]`` for every ``j``."""

    def __init__(self, G: PermutationGroup, xs: Sequence[Permutation], ys: Sequence[Permutation]):
        if len(xs) != len(ys):
            raise ValueError("tuples differ in length")
        n = G.degree
        for p in list(xs) + list(ys):
            if p.degree != n:
                raise DegreeMismatch(f"degree {p.degree} vs group degree {n}")
        self.n = n
        self.X = [x.array for x in xs]
        self.Y = [y.array for y in ys]
        self.sigX = _point_signatures(self.X, n)
        self.sigY = _point_signatures(self.Y, n)
        self.impossible = sorted(self.sigX) != sorted(self.sigY)
        order, how = _forced_base(self.X, n)
        self.how = how
        self.G = G.rebased(order)
        self.levels = self.G.levels
        self.depth = _active_depth(self.levels)

    def _leaf_ok(self, h: np.ndarray) -> bool:
        for x, y in zip(self.X, self.Y):
            if not np.array_equal(h[x], y[h]):
                return False
        return True

    def _dfs(self, level: int, h: np.ndarray, hinv: np.ndarray) -> Iterator[np.ndarray]:
        if level == self.depth:
            if self._leaf_ok(h):
                yield h
            return
        lev = self.levels[level]
        beta = lev.point
        src = self.how.get(beta)
        if src is not None:
            q, j = src
            f = int(self.Y[j][h[q]])
            d = int(hinv[f])
            if lev.parent[d] < 0:
                return
            yield from self._dfs(level + 1, h[lev.rep(d)], lev.rep_inv(d)[hinv])
            return
        want = self.sigX[beta]
        sigY = self.sigY
        cands = [d for d in lev.orbit if sigY[h[d]] == want]
        cands.sort(key=lambda d: int(h[d]))
        for d in cands:
            yield from self._dfs(level + 1, h[lev.rep(d)], lev.rep_inv(d)[hinv])

    def _start(self):
        ident = np.arange(self.n, dtype=INDEX)
        return ident, ident.copy()

    def first(self) -> Permutation | None:
        if self.impossible:
            return None
        h, hinv = self._start()
        for g in self._dfs(0, h, hinv):
            return Permutation._raw(g)
        return None

    def all(self) -> list[Permutation]:
        if self.impossible:
            return []
        h, hinv = self._start()
        return [Permutation._raw(g) for g in self._dfs(0, h, hinv)]

    def subgroup(self) -> PermutationGroup:
        """The centralizer when ``xs == ys``: generators plus exact order."""
        if self.X is not self.Y and not all(np.array_equal(a, b) for a, b in zip(self.X, self.Y)):
            raise ValueError("subgroup search needs xs == ys")
        found: list[np.ndarray] = []
        total = 1
        for level in reversed(range(self.depth)):
            lev = self.levels[level]
            beta = lev.point
            if beta in self.how:
                continue
            orb = _orbit_of(beta, found)
            want = self.sigX[beta]
            for d in sorted(lev.orbit):
                if d in orb or self.sigX[d] != want:
                    continue
                u = lev.rep(d)
                g = next(self._dfs(level + 1, u, lev.rep_inv(d)), None)
                if g is not None:
                    found.append(g)
                    orb = _orbit_of(beta, found)
            total *= len(orb)
        base = [lev.point for lev in self.levels[: self.depth]]
        gens = [Permutation._raw(g) for g in found]
        C = PermutationGroup(gens, degree=self.n, base=base, order_bound=total)
        if C.order() != total:
            raise RuntimeError(f"centralizer search inconsistent: {C.order()} != {total}")
        return C


def _orbit_of(pt: int, gens: list[np.ndarray]) -> set[int]:
    orb = {pt}
    stack = [pt]
    while stack:
        x = stack.pop()
        for g in gens:
            y = int(g[x])
            if y not in orb:
                orb.add(y)
                stack.append(y)
    return orb


def element_transporter(G: PermutationGroup, xs: Sequence[Permutation],
                        ys: Sequence[Permutation]) -> Permutation | None:
    """Some ``g`` in ``G`` conjugating the tuple ``xs`` onto ``ys``, or None."""
    return ConjugationSearch(G, xs, ys).first()


def centralizer(G: PermutationGroup, xs: Sequence[Permutation]) -> PermutationGroup:
    xs = [x for x in xs if not x.is_identity()]
    if not xs:
        return G
    return ConjugationSearch(G, xs, xs).subgroup()


def are_conjugate(G: PermutationGroup, x: Permutation, y: Permutation) -> Permutation | None:
    return element_transporter(G, [x], [y])


# --- subgroup normalizers and transporters -------------------------------

def _fix_signature(E: np.ndarray) -> np.ndarray:
    """Row-wise fixed-point counts of powers 1..n: determines the cycle type."""
    m, n = E.shape
    P = E.astype(INDEX)
    ident = np.arange(n)
    sig = np.empty((m, n), dtype=np.int32)
    cur = P
    for k in range(n):
        sig[:, k] = (cur == ident).sum(axis=1)
        cur = np.take_along_axis(P, cur, axis=1)
    return sig


def _sig_key(row: np.ndarray) -> bytes:
    return np.ascontiguousarray(row).tobytes()


class _EnumeratedGroup:
    """Element table of a small group with hashing and cycle signatures."""

    def __init__(self, H: PermutationGroup):
        self.H = H
        self.E = H.element_array(limit=ENUM_LIMIT).astype(INDEX)
        self.index = {self.E[i].tobytes(): i for i in range(self.E.shape[0])}
        self.sig = _fix_signature(self.E)
        self.sigkeys = [_sig_key(r) for r in self.sig]

    def with_signature(self, key: bytes) -> list[int]:
        return [i for i, k in enumerate(self.sigkeys) if k == key]

    def conj_rows(self, rows: np.ndarray, c: np.ndarray) -> np.ndarray:
        """``c^-1 r c`` for each row ``r``."""
        out = np.empty_like(rows)
        out[:, c] = c[rows]
        return out


def _signature_of(p: np.ndarray) -> bytes:
    return _sig_key(_fix_signature(p[None, :])[0])


def _small_generating_tuple(H: PermutationGroup) -> list[Permutation]:
    gens = [g for g in H.generators if not g.is_identity()]
    if len(gens) <= 2:
        return gens
    rng = random.Random(12345)
    target = H.order()
    for _ in range(60):
        a = H.random_element(rng)
        b = H.random_element(rng)
        if PermutationGroup([a, b]).order() == target:
            return [a, b]
    return gens


def _tuple_candidates(xs: list[Permutation], T: _EnumeratedGroup) -> Iterator[list[np.ndarray]]:
    """Tuples in ``T`` that could be conjugate images of ``xs``, up to ``T``-conjugacy."""
    X = [x.array for x in xs]
    keys = [_signature_of(a) for a in X]
    pair_keys = [_signature_of(X[j][X[0]]) for j in range(len(X))]
    E = T.E
    first = T.with_signature(keys[0])
    # T-classes among candidates for the first entry
    gens = [g.array for g in T.H.generators]
    cls_rep = []
    assigned = set()
    cand_set = set(first)
    for i in first:
        if i in assigned:
            continue
        cls_rep.append(i)
        stack = [i]
        assigned.add(i)
        while stack:
            r = stack.pop()
            for c in gens:
                img = np.empty_like(E[r])
                img[c] = c[E[r]]
                k = T.index[img.tobytes()]
                if k in cand_set and k not in assigned:
                    assigned.add(k)
                    stack.append(k)
    for i in cls_rep:
        a = E[i]
        if len(X) == 1:
            yield [a]
            continue
        # centralizer of a inside T, used to thin the second entry
        comm = np.all(E[:, a] == a[E], axis=1)
        C = E[comm]
        per_entry: list[list[np.ndarray]] = []
        for j in range(1, len(X)):
            opts = []
            for k in T.with_signature(keys[j]):
                b = E[k]
                if _signature_of(b[a]) == pair_keys[j]:
                    opts.append(k)
            if j == 1:
                reps = []
                seen = set()
                for k in opts:
                    if k in seen:
                        continue
                    reps.append(k)
                    imgs = np.empty_like(C)
                    rows = np.arange(C.shape[0])[:, None]
                    imgs[rows, C] = np.take_along_axis(C, np.broadcast_to(E[k], C.shape), axis=1)
                    for r in imgs:
                        seen.add(T.index[r.tobytes()])
                opts = reps
            per_entry.append([E[k] for k in opts])
        yield from _product([a], per_entry)


def _product(prefix, rest):
    if not rest:
        yield list(prefix)
        return
    for b in rest[0]:
        yield from _product(prefix + [b], rest[1:])


def _check_subgroup(G: PermutationGroup, H: PermutationGroup, what: str) -> None:
    if G.degree != H.degree:
        raise DegreeMismatch(f"degree {H.degree} vs {G.degree}")
    for h in H.generators:
        if not G.contains(h):
            raise ValueError(f"{what} is not a subgroup of the ambient group")


def normalizer(G: PermutationGroup, H: PermutationGroup) -> PermutationGroup:
    """``N_G(H)`` for ``H <= G``."""
    _check_subgroup(G, H, "H")
    if H.order() == 1:
        return G
    if H.order() > ENUM_LIMIT:
        return _normalizer_backtrack(G, H)
    xs = _small_generating_tuple(H)
    T = _EnumeratedGroup(H)
    gens = list(H.generators) + centralizer(G, xs).generators
    for ys in _tuple_candidates(xs, T):
        t = ConjugationSearch(G, xs, [Permutation._raw(y) for y in ys]).first()
        if t is not None:
            gens.append(t)
    gens = [g for g in gens if not g.is_identity()]
    return PermutationGroup(gens, degree=G.degree)


def transporter(G: PermutationGroup, H1: PermutationGroup, H2: PermutationGroup) -> Permutation | None:
    """Some ``g`` in ``G`` with ``H1^g = H2``, or None."""
    if not (G.degree == H1.degree == H2.degree):
        raise DegreeMismatch("degree mismatch")
    if H1.order() != H2.order():
        return None
    if sorted(map(len, H1.orbits())) != sorted(map(len, H2.orbits())):
        return None
    if H1.order() == 1:
        return G.identity()
    if H2.order() > ENUM_LIMIT:
        return _transporter_backtrack(G, H1, H2)
    xs = _small_generating_tuple(H1)
    T = _EnumeratedGroup(H2)
    for ys in _tuple_candidates(xs, T):
        t = ConjugationSearch(G, xs, [Permutation._raw(y) for y in ys]).first()
        if t is not None:
            return t
    return None


# --- plain backtrack fallback for large subgroups ------------------------

def _orbit_ids(H: PermutationGroup) -> tuple[np.ndarray, list[int]]:
    ids = np.empty(H.degree, dtype=INDEX)
    sizes = []
    for k, orb in enumerate(H.orbits()):
        ids[orb] = k
        sizes.append(len(orb))
    return ids, sizes


class _PlainSearch:
    def __init__(self, G: PermutationGroup, H1: PermutationGroup, H2: PermutationGroup):
        self.G = G
        self.n = G.degree
        self.H1, self.H2 = H1, H2
        self.id1, self.sz1 = _orbit_ids(H1)
        self.id2, self.sz2 = _orbit_ids(H2)
        self.levels = G.levels
        self.depth = _active_depth(self.levels)

    def _partial_ok(self, level: int, h: np.ndarray) -> bool:
        mp: dict[int, int] = {}
        for lev in self.levels[: level + 1]:
            b = lev.point
            a, c = int(self.id1[b]), int(self.id2[h[b]])
            if self.sz1[a] != self.sz2[c]:
                return False
            if mp.setdefault(a, c) != c:
                return False
        return True

    def _leaf_ok(self, h: np.ndarray) -> bool:
        g = Permutation._raw(h)
        return all(self.H2.contains(x ** g) for x in self.H1.generators)

    def dfs(self, level: int, h: np.ndarray, fixed_first: int | None = None) -> Iterator[np.ndarray]:
        if level == self.depth:
            if self._leaf_ok(h):
                yield h
            return
        lev = self.levels[level]
        opts = [fixed_first] if fixed_first is not None else sorted(lev.orbit, key=lambda d: int(h[d]))
        for d in opts:
            h2 = h[lev.rep(d)]
            if self._partial_ok(level, h2):
                yield from self.dfs(level + 1, h2)


def _transporter_backtrack(G, H1, H2):
    s = _PlainSearch(G, H1, H2)
    g = next(s.dfs(0, np.arange(G.degree, dtype=INDEX)), None)
    return None if g is None else Permutation._raw(g)


def _normalizer_backtrack(G, H):
    s = _PlainSearch(G, H, H)
    found: list[np.ndarray] = []
    total = 1
    ident = np.arange(G.degree, dtype=INDEX)
    for level in reversed(range(s.depth)):
        lev = s.levels[level]
        orb = _orbit_of(lev.point, found)
        for d in sorted(lev.orbit):
            if d in orb:
                continue
            g = next(s.dfs(level, ident, fixed_first=d), None)
            if g is not None:
                found.append(g)
                orb = _orbit_of(lev.point, found)
        total *= len(orb)
    gens = [Permutation._raw(g) for g in found]
    return PermutationGroup(gens, degree=G.degree, base=G.base, order_bound=total)


# --- brute-force oracles ---------------------------------------------------

def _conj_set(H_elems: set[bytes], g: Permutation, gens: Sequence[Permutation]) -> bool:
    return all((h ** g).key() in H_elems for h in gens)


def normalizer_bruteforce(G: PermutationGroup, H: PermutationGroup) -> list[Permutation]:
    elems = {h.key() for h in H.elements()}
    return [g for g in G.elements(limit=100_000) if _conj_set(elems, g, H.generators)]


def transporter_bruteforce(G: PermutationGroup, H1: PermutationGroup, H2: PermutationGroup) -> list[Permutation]:
    if H1.order() != H2.order():
        return []
    elems = {h.key() for h in H2.elements()}
    return [g for g in G.elements(limit=100_000) if _conj_set(elems, g, H1.generators)]


def centralizer_bruteforce(G: PermutationGroup, xs: Sequence[Permutation]) -> list[Permutation]:
    return [g for g in G.elements(limit=100_000) if all(x * g == g * x for x in xs)]


def subgroup_from_predicate(G: PermutationGroup, pred: Callable[[Permutation], bool]) -> list[Permutation]:
    return [g for g in G.elements(limit=100_000) if pred(g)]
