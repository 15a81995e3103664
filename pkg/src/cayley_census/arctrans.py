"""s-arcs, arc orbits, local actions and Burnside counting.

An s-arc is stored as a row ``(v0, ..., vs)``.  To find orbits, each arc is
packed into one integer key (mixed radix ``n``), each generator's image of
every arc is located by binary search, and the resulting permutations of the
arc set go through a union-find kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .graphs import Graph, GroupAction
from .group import PermutationGroup
from .perm import Permutation

MAX_S = 3


class NotAnAutomorphism(ValueError):
    pass


@dataclass
class ArcOrbitProfile:
    arc_counts: list[int]
    orbit_counts: list[int]

    def s_transitivity(self) -> int:
        s = -1
        for k, c in enumerate(self.orbit_counts):
            if c == 1:
                s = k
            else:
                break
        return max(s, 0)


def s_arcs(g: Graph, s: int) -> np.ndarray:
    """All s-arcs, lexicographically sorted."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    arcs = np.arange(g.n, dtype=np.int64)[:, None]
    deg = g.degrees()
    for k in range(s):
        last = arcs[:, -1]
        reps = deg[last]
        base = np.repeat(g.indptr[last], reps)
        offs = np.arange(reps.sum()) - np.repeat(np.cumsum(reps) - reps, reps)
        nxt = g.indices[base + offs]
        ext = np.concatenate([np.repeat(arcs, reps, axis=0), nxt[:, None]], axis=1)
        if k >= 1:
            ext = ext[ext[:, -1] != ext[:, -3]]
        arcs = ext
    return arcs


def _keys(arcs: np.ndarray, n: int) -> np.ndarray:
    key = np.zeros(len(arcs), dtype=np.int64)
    for c in range(arcs.shape[1]):
        key = key * n + arcs[:, c]
    return key


def check_automorphisms(g: Graph, act: GroupAction) -> None:
    E = g.edges()
    keys = np.sort(_keys(E, g.n))
    for j, p in enumerate(act.gen_images):
        if len(p) != g.n:
            raise NotAnAutomorphism(f"generator {j} acts on {len(p)} points, graph has {g.n}")
        img = np.sort(p[E], axis=1)
        k = _keys(img, g.n)
        pos = np.searchsorted(keys, k)
        ok = (pos < len(keys)) & (keys[np.minimum(pos, len(keys) - 1)] == k)
        if not np.all(ok):
            bad = E[np.argmin(ok)]
            raise NotAnAutomorphism(f"generator {j} maps edge {tuple(bad.tolist())} to a non-edge")


def arc_orbit_count(g: Graph, act: GroupAction, s: int, *, checked: bool = False) -> tuple[int, int]:
    """``(number of s-arcs, number of orbits of the group on them)``."""
    if s > MAX_S and g.n ** (s + 1) >= 2 ** 63:
        raise ValueError("arc keys would overflow")
    if not checked:
        check_automorphisms(g, act)
    arcs = s_arcs(g, s)
    if len(arcs) == 0:
        return 0, 0
    keys = _keys(arcs, g.n)          # already sorted: arcs are lexicographic
    perms = []
    for p in act.gen_images:
        img = _keys(p[arcs], g.n)
        perms.append(np.searchsorted(keys, img))
    if not perms:
        return len(arcs), len(arcs)
    labels = kernels.orbit_labels(np.stack(perms))
    return len(arcs), int(np.count_nonzero(labels == np.arange(len(arcs))))


def arc_profile(g: Graph, act: GroupAction, max_s: int = MAX_S) -> ArcOrbitProfile:
    check_automorphisms(g, act)
    counts, orbits = [], []
    for s in range(max_s + 1):
        c, o = arc_orbit_count(g, act, s, checked=True)
        counts.append(c)
        orbits.append(o)
    return ArcOrbitProfile(counts, orbits)


def s_transitivity(g: Graph, act: GroupAction) -> int:
    """Largest ``s <= 3`` with the group transitive on s-arcs."""
    check_automorphisms(g, act)
    best = 0
    for s in range(MAX_S + 1):
        c, o = arc_orbit_count(g, act, s, checked=True)
        if c == 0 or o != 1:
            break
        best = s
    return best


def arc_orbit_count_bruteforce(g: Graph, elements: list[np.ndarray], s: int) -> tuple[int, int]:
    """Orbit count by applying every group element to every arc."""
    arcs = [tuple(a) for a in s_arcs(g, s).tolist()]
    index = {a: i for i, a in enumerate(arcs)}
    seen = [False] * len(arcs)
    orbits = 0
    for i, a in enumerate(arcs):
        if seen[i]:
            continue
        orbits += 1
        for e in elements:
            seen[index[tuple(int(e[v]) for v in a)]] = True
    return len(arcs), orbits


def local_action(g: Graph, act: GroupAction, v: int) -> PermutationGroup:
    """Group induced on the neighbors of ``v`` by its stabilizer, on ``deg(v)`` points."""
    check_automorphisms(g, act)
    A = act.as_group()
    nb = g.neighbors(v)
    d = len(nb)
    pos = {int(w): i for i, w in enumerate(nb)}
    stab = A.point_stabilizer(v)
    gens = []
    for h in stab.generators:
        img = [pos[int(h.array[w])] for w in nb]
        p = Permutation(img)
        if not p.is_identity():
            gens.append(p)
    return PermutationGroup(gens, degree=d)


def vertex_stabilizer(act: GroupAction, v: int) -> PermutationGroup:
    return act.as_group().point_stabilizer(v)


def is_two_transitive(H: PermutationGroup) -> bool:
    if not H.is_transitive():
        return False
    if H.degree <= 1:
        return True
    return len(H.point_stabilizer(0).orbit(1)) == H.degree - 1


def burnside_orbit_count(K: PermutationGroup, *, limit: int = 100_000) -> int:
    """Average number of fixed points over the elements of K."""
    if K.order() > limit:
        raise ValueError(f"|K| = {K.order()} exceeds the enumeration cap {limit}")
    E = K.element_array(limit=limit)
    fixed = int((E == np.arange(K.degree)).sum())
    value = Fraction(fixed, K.order())
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral Burnside average {value}")
    count = int(value)
    if count != len(K.orbits()):
        raise ArithmeticError(f"Burnside count {count} differs from {len(K.orbits())} orbits")
    return count


def fixed_point_profile(K: PermutationGroup) -> dict[int, list[int]]:
    """Element order -> sorted list of distinct fixed-point counts."""
    out: dict[int, set[int]] = {}
    for e in K.elements():
        out.setdefault(e.order(), set()).add(e.degree - len(e.support()))
    return {k: sorted(v) for k, v in sorted(out.items())}
