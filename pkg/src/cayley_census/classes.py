"""Conjugacy classes of elements.

Symmetric and alternating groups in their natural action get their classes
from cycle types.  Anything else is handled by random sampling (closed under
powers), separating classes with the element transporter, until the class
equation sums to the group order.  Either way the result is certified by
that sum.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial, prod
from collections import Counter

import numpy as np

from .group import PermutationGroup
from .perm import INDEX, Permutation
from .search import centralizer, element_transporter


@dataclass(frozen=True)
class ElementClass:
    rep: Permutation
    size: int
    centralizer_order: int

    @property
    def element_order(self) -> int:
        return self.rep.order()


class ClassEquationError(RuntimeError):
    pass


def natural_type(G: PermutationGroup) -> str | None:
    """'S' or 'A' when G is the full symmetric/alternating group on its points."""
    n = G.degree
    o = G.order()
    if n >= 2 and o == factorial(n):
        return "S"
    if n >= 3 and o == factorial(n) // 2:
        return "A"
    return None


def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _rep_for(parts: tuple[int, ...], n: int) -> Permutation:
    a = np.arange(n, dtype=INDEX)
    pos = 0
    for k in parts:
        if k > 1:
            a[pos:pos + k] = np.roll(np.arange(pos, pos + k), -1)
        pos += k
    return Permutation._raw(a)


def _natural_classes(n: int, kind: str) -> list[ElementClass]:
    out = []
    total = factorial(n)
    for parts in _partitions(n):
        cnt = Counter(parts)
        z = prod(k ** m * factorial(m) for k, m in cnt.items())
        rep = _rep_for(parts, n)
        if kind == "S":
            out.append(ElementClass(rep, total // z, z))
            continue
        if (n - len(parts)) % 2:
            continue
        if all(m == 1 for m in cnt.values()) and all(k % 2 for k in parts):
            t = Permutation.from_cycles(n, (0, 1), one_based=False)
            out.append(ElementClass(rep, total // (2 * z), z))
            out.append(ElementClass(rep ** t, total // (2 * z), z))
        else:
            out.append(ElementClass(rep, total // z, z // 2))
    return out


def _fixsig(p: Permutation) -> tuple:
    return tuple(sorted(p.cycle_type().lengths))


def _sampled_classes(G: PermutationGroup, seed: int, max_samples: int) -> list[ElementClass]:
    rng = random.Random(seed)
    target = G.order()
    found: list[ElementClass] = []
    by_type: dict[tuple, list[int]] = {}
    covered = 0

    def consider(x: Permutation) -> None:
        nonlocal covered
        key = _fixsig(x)
        for idx in by_type.get(key, ()):
            if element_transporter(G, [x], [found[idx].rep]) is not None:
                return
        c = centralizer(G, [x]).order()
        found.append(ElementClass(x, target // c, c))
        by_type.setdefault(key, []).append(len(found) - 1)
        covered += target // c

    consider(G.identity())
    samples = 0
    while covered < target:
        if samples >= max_samples:
            raise ClassEquationError(f"class equation incomplete: {covered} of {target}")
        samples += 1
        x = G.random_element(rng)
        o = x.order()
        for d in sorted(_divisors(o), reverse=True):
            consider(x ** (o // d))
    if covered != target:
        raise ClassEquationError(f"class sizes sum to {covered}, group order {target}")
    return found


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _sort_key(c: ElementClass):
    return (c.element_order, -c.centralizer_order, c.rep.images)


def conjugacy_classes(G: PermutationGroup, seed: int = 0, max_samples: int = 20_000) -> list[ElementClass]:
    """Element classes sorted by (element order, -centralizer order, rep images).

    Raises ClassEquationError if the sizes do not sum to ``|G|``.
    """
    kind = natural_type(G)
    if kind is not None:
        classes = _natural_classes(G.degree, kind)
    else:
        classes = _sampled_classes(G, seed, max_samples)
    total = sum(c.size for c in classes)
    if total != G.order():
        raise ClassEquationError(f"class sizes sum to {total}, group order {G.order()}")
    return sorted(classes, key=_sort_key)


def class_orbit(G: PermutationGroup, rep: Permutation, expected: int | None = None) -> np.ndarray:
    """All conjugates of ``rep`` as rows, by breadth-first conjugation."""
    gens = [g.array for g in G.generators if not g.is_identity()]
    start = rep.array
    rows = [start]
    seen = {start.tobytes()}
    k = 0
    while k < len(rows):
        r = rows[k]
        k += 1
        for g in gens:
            out = np.empty_like(r)
            out[g] = g[r]
            key = out.tobytes()
            if key not in seen:
                seen.add(key)
                rows.append(out)
    if expected is not None and len(rows) != expected:
        raise ClassEquationError(f"conjugacy orbit has {len(rows)} elements, expected {expected}")
    return np.stack(rows)
