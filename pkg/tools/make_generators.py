"""Regenerate the shipped generator files in src/cayley_census/data/.

Standard generators (GAP / ATLAS conventions) are written down directly for
M11, M12 and M24.  The degree-24 representation of M12:2 is cut out of M24 as
the stabilizer of the pair {D, complement of D} for a dodecad D of the
extended binary Golay code; the code is spanned by the M24-orbit of the fixed
set of an involution of cycle type 1^8 2^8 (an octad).  Points are relabeled
so that D = {1..12}.  M12 and M11 in degree 24 are the setwise stabilizer of D
and the stabilizer of point 1 within it; M11 in degree 12 is the latter
restricted to the complement of D.

Usage: python3 tools/make_generators.py [output_dir]
"""

from __future__ import annotations

import random
import sys
from math import factorial
from pathlib import Path


ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from cayley_census.group import PermutationGroup  # noqa: E402
from cayley_census.groupdata import write_generator_file  # noqa: E402
from cayley_census.perm import Permutation  # noqa: E402

C = Permutation.from_cycles

M11_GENS = [C(11, range(1, 12)), C(11, (3, 7, 11, 8), (4, 10, 5, 6))]
M12_GENS = [C(12, range(1, 12)), C(12, (3, 7, 11, 8), (4, 10, 5, 6)),
            C(12, (1, 12), (2, 11), (3, 6), (4, 8), (5, 9), (7, 10))]
M24_GENS = [C(24, range(1, 24)),
            C(24, (3, 17, 10, 7, 9), (4, 13, 14, 19, 5), (8, 18, 11, 12, 23), (15, 20, 22, 21, 16)),
            C(24, (1, 24), (2, 23), (3, 12), (4, 16), (5, 18), (6, 10), (7, 20), (8, 14), (9, 21),
              (11, 17), (13, 22), (15, 19))]

GAP_NOTE = "standard permutation generators as used by GAP's MathieuGroup"


def find_octad(M24: PermutationGroup, rng: random.Random) -> frozenset[int]:
    while True:
        g = M24.random_element(rng)
        o = g.order()
        if o % 2:
            continue
        h = g ** (o // 2)
        fixed = [i for i in range(24) if h(i) == i]
        if len(fixed) == 8:
            return frozenset(fixed)


def set_orbit(gens, start: frozenset[int]) -> list[frozenset[int]]:
    seen = {start}
    out = [start]
    k = 0
    while k < len(out):
        s = out[k]
        k += 1
        for g in gens:
            t = frozenset(g(i) for i in s)
            if t not in seen:
                seen.add(t)
                out.append(t)
    return out


def find_dodecad(octads: list[frozenset[int]]) -> frozenset[int]:
    a = octads[0]
    for b in octads[1:]:
        if len(a & b) == 2:
            return a ^ b
    raise RuntimeError("no pair of octads meeting in two points")


def two_generators(G: PermutationGroup, rng: random.Random) -> list[Permutation]:
    target = G.order()
    while True:
        a, b = G.random_element(rng), G.random_element(rng)
        if PermutationGroup([a, b], order_bound=target).order() == target:
            return [a, b]


def relabel(p: Permutation, order: list[int]) -> Permutation:
    """Conjugate so that old point ``order[i]`` becomes ``i``."""
    pos = {old: new for new, old in enumerate(order)}
    return Permutation([pos[p(old)] for old in order])


def restrict(p: Permutation, pts: list[int]) -> Permutation:
    pos = {old: new for new, old in enumerate(pts)}
    return Permutation([pos[p(old)] for old in pts])


def main(out_dir: Path) -> None:
    rng = random.Random(20240611)
    M24 = PermutationGroup(M24_GENS)
    assert M24.order() == 244823040
    octad = find_octad(M24, rng)
    octads = set_orbit(M24_GENS, octad)
    assert len(octads) == 759
    D = find_dodecad(octads)
    Dc = frozenset(range(24)) - D
    assert len(D) == 12
    # gather elements stabilizing {D, Dc} until they generate M12:2
    found: list[Permutation] = []
    while True:
        g = M24.random_element(rng)
        img = frozenset(g(i) for i in D)
        if img in (D, Dc):
            found.append(g)
            if len(found) >= 2 and PermutationGroup(found).order() == 190080:
                break
    order = sorted(D) + sorted(Dc)
    A = PermutationGroup([relabel(g, order) for g in found])
    assert A.order() == 190080
    A_gens = two_generators(A, rng)
    first = frozenset(range(12))
    swap = next(g for g in A_gens if frozenset(g(i) for i in first) != first) \
        if any(frozenset(g(i) for i in first) != first for g in A_gens) else None
    assert swap is not None
    # Schreier generators of the index-2 setwise stabilizer of {1..12}
    sub = []
    for g in A_gens:
        if frozenset(g(i) for i in first) == first:
            sub += [g, swap * g * swap.inverse()]
        else:
            sub += [g * swap.inverse(), swap * g]
    sub.append(swap * swap)
    M12 = PermutationGroup([s for s in sub if not s.is_identity()], order_bound=95040)
    assert M12.order() == 95040
    M12_gens = two_generators(M12, rng)
    M11 = PermutationGroup(M12_gens).point_stabilizer(0)
    assert M11.order() == 7920
    M11_gens = two_generators(M11, rng)
    tail = list(range(12, 24))
    M11_12 = [restrict(g, tail) for g in M11_gens]
    assert PermutationGroup(M11_12).order() == 7920 and PermutationGroup(M11_12).is_transitive()

    src24 = "stabilizer in M24 of the pair {D, complement} for a Golay dodecad D, D relabeled to points 1..12"
    files = {
        "M11.deg11": (M11_GENS, 7920, [GAP_NOTE]),
        "M12.deg12": (M12_GENS, 95040, [GAP_NOTE]),
        "M24.deg24": (M24_GENS, 244823040, [GAP_NOTE]),
        "M12.2.deg24": (A_gens, 190080, [src24, "M24 generators: " + GAP_NOTE]),
        "M12.deg24": (M12_gens, 95040, ["setwise stabilizer of points 1..12 inside M12.2.deg24"]),
        "M11.deg24": (M11_gens, 7920, ["stabilizer of point 1 inside M12.deg24"]),
        "M11.deg12": (M11_12, 7920, ["M11.deg24 restricted to points 13..24, renumbered 1..12"]),
        "A11.deg11": ([C(11, range(1, 12)), C(11, (1, 2, 3))], factorial(11) // 2,
                      ["alternating group: an 11-cycle and a 3-cycle"]),
        "A12.deg12": ([C(12, range(2, 13)), C(12, (1, 2, 3))], factorial(12) // 2,
                      ["alternating group: an 11-cycle on 2..12 and a 3-cycle"]),
        "S12.deg12": ([C(12, range(1, 13)), C(12, (1, 2))], factorial(12),
                      ["symmetric group: a 12-cycle and a transposition"]),
    }
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, (gens, order_, notes) in files.items():
        G = PermutationGroup(gens)
        assert G.order() == order_, (name, G.order())
        write_generator_file(out_dir / f"{name}.gens", gens, order_, [name] + notes)
        print(f"{name}: degree {gens[0].degree}, order {order_}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "src" / "cayley_census" / "data")
