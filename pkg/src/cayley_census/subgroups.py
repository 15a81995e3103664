"""Conjugacy classes of subgroups isomorphic to S4 or A4.

Both groups are pinned down by von Dyck presentations, so a pair of elements
satisfying the relations generates a copy automatically:

* S4 = <x, y | x^4 = y^2 = (xy)^3 = 1>; with ``z = xy`` of order 3 and ``y``
  an involution, ``x = z y`` must have order exactly 4.
* A4 = <a, z | a^2 = z^3 = (az)^3 = 1>; ``a`` an involution, ``a z`` of order 3.

Every copy contains some order-3 element conjugate to a fixed class
representative ``z``, so scanning all involutions ``y`` against each ``z`` finds
every copy.  Copies containing ``z`` are conjugate iff they are conjugate under
``N_G(<z>)``, which gives an exact dedupe.  Completeness is certified by
counting generating pairs twice: per class via ``|G:N_G(K)|`` and globally via
``|z^G|`` times the number of hits for ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classes import class_orbit, conjugacy_classes, ElementClass
from .group import PermutationGroup
from .perm import INDEX, Permutation
from .search import normalizer, element_transporter

SUBGROUP_TYPES = ("A4", "S4")


class CoverageError(RuntimeError):
    pass


@dataclass
class SubgroupClass:
    kind: str
    generators: tuple[Permutation, Permutation]
    group: PermutationGroup
    normalizer_order: int
    class_size: int
    z_class: int
    pairs_per_copy: int

    def as_record(self) -> dict:
        return {
            "type": self.kind,
            "generators": [list(int(v) + 1 for v in g.array) for g in self.generators],
            "order": self.group.order(),
            "normalizer_order": self.normalizer_order,
            "class_size": self.class_size,
        }


@dataclass
class ClassSearchCertificate:
    kind: str
    per_z: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r["by_classes"] == r["by_scan"] for r in self.per_z)


def _row_orders_equal(P: np.ndarray, k: int) -> np.ndarray:
    """Mask of rows with ``P^k == identity``."""
    n = P.shape[1]
    ident = np.arange(n)
    cur = P
    for _ in range(k - 1):
        cur = np.take_along_axis(P, cur, axis=1)
    return (cur == ident).all(axis=1)


def _order_mask(P: np.ndarray, order: int) -> np.ndarray:
    """Rows whose order is exactly ``order`` (3 or 4)."""
    ident = np.arange(P.shape[1])
    if order == 3:
        return _row_orders_equal(P, 3) & ~(P == ident).all(axis=1)
    if order == 4:
        P2 = np.take_along_axis(P, P, axis=1)
        P4 = np.take_along_axis(P2, P2, axis=1)
        return (P4 == ident).all(axis=1) & ~(P2 == ident).all(axis=1)
    raise ValueError(order)


def _pair_hits(kind: str, z: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Indices of involutions ``y`` forming a generating pair with ``z``."""
    if kind == "S4":
        P = Y[:, z]              # z*y: apply z then y
        return np.nonzero(_order_mask(P, 4))[0]
    P = z[Y]                     # a*z
    return np.nonzero(_order_mask(P, 3))[0]


def _make_pair(kind: str, z: Permutation, y: Permutation) -> tuple[Permutation, Permutation]:
    if kind == "S4":
        return (z * y, y)
    return (y, z)


def _expected_order(kind: str) -> int:
    return 24 if kind == "S4" else 12


def _pairs_in_copy(kind: str, elems: list[Permutation], is_z_class) -> int:
    """Generating pairs (z', y) inside one copy with z' in the class of z."""
    invs = np.stack([e.array for e in elems if e.order() == 2])
    total = 0
    for e in elems:
        if e.order() == 3 and is_z_class(e):
            total += len(_pair_hits(kind, e.array, invs))
    return total


def find_subgroup_classes(G: PermutationGroup, kind: str, *,
                          classes: list[ElementClass] | None = None,
                          ) -> tuple[list[SubgroupClass], ClassSearchCertificate]:
    """One representative per conjugacy class of subgroups of type ``kind``."""
    if kind not in SUBGROUP_TYPES:
        raise ValueError(f"subgroup type must be one of {SUBGROUP_TYPES}, got {kind!r}")
    if classes is None:
        classes = conjugacy_classes(G)
    target = _expected_order(kind)
    inv_classes = [c for c in classes if c.element_order == 2]
    z_classes = [c for c in classes if c.element_order == 3]
    cert = ClassSearchCertificate(kind)
    if not inv_classes or not z_classes:
        return [], cert
    Y = np.concatenate([class_orbit(G, c.rep, c.size) for c in inv_classes]).astype(INDEX)

    # a copy of A4 with elements in z's class also meets the class of z^-1,
    # so only one class from each inverse pair is scanned
    def class_index(x: Permutation) -> int:
        for i, c in enumerate(z_classes):
            if c.rep.cycle_type() == x.cycle_type() and element_transporter(G, [x], [c.rep]) is not None:
                return i
        raise RuntimeError("element of order 3 outside the known classes")

    inv_of = [class_index(c.rep.inverse()) for c in z_classes]
    scan = [i for i in range(len(z_classes)) if kind == "S4" or inv_of[i] >= i]

    found: list[SubgroupClass] = []
    for zi in scan:
        zc = z_classes[zi]
        z = zc.rep
        self_inverse_class = inv_of[zi] == zi
        hits = _pair_hits(kind, z.array, Y)
        # Y rows are a single array; hash only the hits
        hit_keys = {Y[i].tobytes(): j for j, i in enumerate(hits)}
        N = normalizer(G, PermutationGroup([z]))
        ngens = [g.array for g in N.generators if not g.is_identity()]
        copy_of = np.full(len(hits), -1, dtype=np.int64)
        n_copies = 0
        roots = []
        for j0 in range(len(hits)):
            if copy_of[j0] >= 0:
                continue
            # every copy reached from here lies in one G-class
            roots.append(j0)
            stack = [closure_rows(_make_pair(kind, z, Permutation._raw(Y[hits[j0]])), target)]
            while stack:
                rows = stack.pop()
                members = [hit_keys[r.tobytes()] for r in rows if r.tobytes() in hit_keys]
                if copy_of[members[0]] >= 0:
                    continue
                copy_of[members] = n_copies
                n_copies += 1
                for g in ngens:
                    conj = np.empty_like(rows)
                    conj[:, g] = g[rows]
                    stack.append(conj)
        by_classes = 0
        for r in roots:
            y = Permutation._raw(Y[hits[r]])
            gens = _make_pair(kind, z, y)
            K = PermutationGroup(list(gens), order_bound=target)
            NK = normalizer(G, K).order()
            elems = K.elements()

            def in_z_class(e: Permutation, K=K, elems=elems) -> bool:
                if _k_conjugate(elems, e, z):
                    return True
                return self_inverse_class
            p = _pairs_in_copy(kind, elems, in_z_class)
            size = G.order() // NK
            by_classes += size * p
            found.append(SubgroupClass(kind, gens, K, NK, size, zi, p))
        cert.per_z.append({
            "z_class": zi,
            "z_class_size": zc.size,
            "hits": int(len(hits)),
            "by_scan": zc.size * int(len(hits)),
            "by_classes": by_classes,
        })
    if not cert.ok:
        raise CoverageError(f"{kind} class search failed its coverage count: {cert.per_z}")
    return found, cert


def closure_rows(gens, expected: int | None = None) -> np.ndarray:
    """Elements of a small group generated by ``gens``, as rows."""
    arrs = [g.array for g in gens]
    n = arrs[0].shape[0]
    start = np.arange(n, dtype=INDEX)
    rows = [start]
    seen = {start.tobytes()}
    k = 0
    while k < len(rows):
        r = rows[k]
        k += 1
        for a in arrs:
            out = a[r]
            key = out.tobytes()
            if key not in seen:
                seen.add(key)
                rows.append(out)
    if expected is not None and len(rows) != expected:
        raise RuntimeError(f"closure has {len(rows)} elements, expected {expected}")
    return np.stack(rows)


def _k_conjugate(elems: list[Permutation], a: Permutation, b: Permutation) -> bool:
    return any(a ** k == b for k in elems)
