"""Canonical labeling, isomorphism and automorphism groups of graphs.

A plain individualization-refinement search:

* refinement is the equitable-partition procedure in ``kernels.refine``;
* the target cell is the first smallest non-singleton cell, and its vertices
  are tried in increasing order;
* a leaf's certificate is the sorted edge list after renaming every vertex by
  its position, and the canonical form is the least certificate over all
  leaves;
* two leaves with equal certificates give an automorphism.  Children lying in
  one orbit of the automorphisms found so far (restricted to those fixing the
  current prefix) are skipped, and after an automorphism is found the search
  resumes at the deepest common ancestor of the two leaves.

The order of the automorphism group is the product, along the first path, of
the orbit lengths of the chosen vertices; the generators are then handed to
Schreier-Sims with that order as a bound.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .graphs import Graph, format_edge_list
from .group import PermutationGroup
from .perm import INDEX, Permutation

VERTEX_CAP = 20_000


class VertexCapExceeded(ValueError):
    pass


@dataclass
class ColoredGraph:
    graph: Graph
    colors: np.ndarray

    def __post_init__(self):
        self.colors = np.asarray(self.colors, dtype=np.int64)
        if self.colors.shape != (self.graph.n,):
            raise ValueError("one color per vertex required")


class _Partition:
    __slots__ = ("lab", "inv", "cell", "size", "ncells")

    def __init__(self, lab, inv, cell, size, ncells):
        self.lab, self.inv, self.cell, self.size, self.ncells = lab, inv, cell, size, ncells

    @classmethod
    def from_colors(cls, colors: np.ndarray) -> "_Partition":
        n = len(colors)
        lab = np.lexsort((np.arange(n), colors)).astype(np.int64)
        inv = np.empty(n, dtype=np.int64)
        inv[lab] = np.arange(n)
        sc = colors[lab]
        new = np.ones(n, dtype=bool)
        new[1:] = sc[1:] != sc[:-1]
        starts = np.nonzero(new)[0]
        cell = starts[np.cumsum(new) - 1].astype(np.int64)
        size = np.zeros(n, dtype=np.int64)
        ends = np.append(starts[1:], n)
        size[starts] = ends - starts
        return cls(lab, inv, cell, size, len(starts))

    def copy(self) -> "_Partition":
        return _Partition(self.lab.copy(), self.inv.copy(), self.cell.copy(), self.size.copy(), self.ncells)

    def starts(self) -> np.ndarray:
        return np.nonzero(self.cell == np.arange(len(self.cell)))[0]

    def refine(self, g: Graph, queue) -> None:
        self.ncells = int(kernels.refine(g.indptr, g.indices, self.lab, self.inv, self.cell, self.size,
                                         list(int(q) for q in queue)))

    def individualize(self, v: int) -> int:
        p = int(self.inv[v])
        C = int(self.cell[p])
        sz = int(self.size[C])
        u = int(self.lab[C])
        self.lab[C], self.lab[p] = v, u
        self.inv[v], self.inv[u] = C, p
        self.size[C] = 1
        self.cell[C + 1:C + sz] = C + 1
        self.size[C + 1] = sz - 1
        self.ncells += 1
        return C

    def target_cell(self) -> np.ndarray:
        st = self.starts()
        sz = self.size[st]
        cand = st[sz > 1]
        best = cand[np.argmin(self.size[cand])]
        return np.sort(self.lab[best:best + self.size[best]])

    def discrete(self) -> bool:
        return self.ncells == len(self.lab)


def _certificate(g: Graph, inv: np.ndarray, colors_by_pos: np.ndarray | None) -> bytes:
    E = inv[g.edges()]
    E.sort(axis=1)
    E = E[np.lexsort((E[:, 1], E[:, 0]))]
    body = E.astype(">i8").tobytes()
    if colors_by_pos is not None:
        body = colors_by_pos.astype(">i8").tobytes() + b"|" + body
    return body


def _common_prefix(a: Sequence[int], b: Sequence[int]) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


@dataclass
class _Leaf:
    cert: bytes
    lab: np.ndarray
    inv: np.ndarray
    seq: list[int]


@dataclass
class SearchResult:
    generators: list[np.ndarray]
    order: int
    first_path: list[int]
    best: _Leaf
    nodes: int = 0
    leaves: int = 0
    orbit_sizes: list[int] = field(default_factory=list)


class _Search:
    def __init__(self, g: Graph, colors: np.ndarray | None):
        if g.n > VERTEX_CAP:
            raise VertexCapExceeded(f"{g.n} vertices exceeds the cap of {VERTEX_CAP}")
        self.g = g
        self.n = g.n
        self.colors = colors
        c = colors if colors is not None else np.zeros(g.n, dtype=np.int64)
        self.root = _Partition.from_colors(c)
        self.root.refine(g, self.root.starts())
        self.gens: list[np.ndarray] = []
        self._orbit_cache: dict[tuple, np.ndarray] = {}
        self.first: _Leaf | None = None
        self.best: _Leaf | None = None
        self.nodes = 0
        self.leaves = 0

    def _child(self, P: _Partition, v: int) -> _Partition:
        Q = P.copy()
        s = Q.individualize(v)
        Q.refine(self.g, [s])
        self.nodes += 1
        return Q

    def _leaf(self, P: _Partition, seq: list[int]) -> _Leaf:
        self.leaves += 1
        cbp = self.colors[P.lab] if self.colors is not None else None
        return _Leaf(_certificate(self.g, P.inv, cbp), P.lab.copy(), P.inv.copy(), list(seq))

    def _orbit_labels(self, prefix: Sequence[int]) -> np.ndarray:
        key = (tuple(prefix), len(self.gens))
        lab = self._orbit_cache.get(key)
        if lab is None:
            fix = [a for a in self.gens if all(a[p] == p for p in prefix)]
            lab = kernels.orbit_labels(np.stack(fix)) if fix else np.arange(self.n, dtype=np.int64)
            self._orbit_cache[key] = lab
        return lab

    def _add_auto(self, a: _Leaf, b: _Leaf) -> None:
        gamma = b.lab[a.inv]
        if not np.array_equal(gamma, np.arange(self.n)):
            self.gens.append(gamma)

    def _visit_leaf(self, leaf: _Leaf) -> int | None:
        """Depth to resume at, or None to keep going."""
        if leaf.cert == self.first.cert:
            self._add_auto(leaf, self.first)
            return _common_prefix(leaf.seq, self.first.seq)
        if leaf.cert == self.best.cert:
            self._add_auto(leaf, self.best)
            return _common_prefix(leaf.seq, self.best.seq)
        if leaf.cert < self.best.cert:
            self.best = leaf
        return None

    def _explore(self, P: _Partition, seq: list[int]) -> int | None:
        if P.discrete():
            return self._visit_leaf(self._leaf(P, seq))
        depth = len(seq)
        done: list[int] = []
        for w in P.target_cell().tolist():
            lab = self._orbit_labels(seq)
            if any(lab[w] == lab[x] for x in done):
                continue
            done.append(w)
            j = self._explore(self._child(P, w), seq + [w])
            if j is not None and j < depth:
                return j
        return None

    def run(self) -> SearchResult:
        path: list[tuple[_Partition, np.ndarray, int]] = []
        P = self.root
        seq: list[int] = []
        while not P.discrete():
            cell = P.target_cell()
            v = int(cell[0])
            path.append((P, cell, v))
            seq.append(v)
            P = self._child(P, v)
        self.first = self.best = self._leaf(P, seq)
        sizes = [1] * len(path)
        for level in reversed(range(len(path))):
            node, cell, v0 = path[level]
            prefix = seq[:level]
            done = [v0]
            for w in cell.tolist()[1:]:
                lab = self._orbit_labels(prefix)
                if any(lab[w] == lab[x] for x in done):
                    continue
                done.append(w)
                self._explore(self._child(node, w), prefix + [w])
            lab = self._orbit_labels(prefix)
            sizes[level] = int(np.count_nonzero(lab[cell] == lab[v0]))
        order = 1
        for s in sizes:
            order *= s
        return SearchResult(self.gens, order, seq, self.best, self.nodes, self.leaves, sizes)


def refine(cg: ColoredGraph) -> np.ndarray:
    """Coarsest equitable refinement of the coloring; colors numbered by cell position."""
    P = _Partition.from_colors(cg.colors)
    P.refine(cg.graph, P.starts())
    out = np.empty(cg.graph.n, dtype=np.int64)
    starts = P.starts()
    rank = np.empty(cg.graph.n, dtype=np.int64)
    rank[starts] = np.arange(len(starts))
    out[P.lab] = rank[P.cell]
    return out


@dataclass
class CanonicalForm:
    relabeling: Permutation
    canonical_edge_list: np.ndarray
    certificate_hash: str
    n: int

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.canonical_edge_list)


def _hash_edges(n: int, E: np.ndarray) -> str:
    g = Graph.from_edges(n, E)
    return hashlib.sha256(format_edge_list(g).encode()).hexdigest()


def _search(g: Graph, colors=None) -> SearchResult:
    return _Search(g, None if colors is None else np.asarray(colors, dtype=np.int64)).run()


def canonical_form(g: Graph, colors=None) -> CanonicalForm:
    res = _search(g, colors)
    inv = res.best.inv
    E = inv[g.edges()]
    E.sort(axis=1)
    E = E[np.lexsort((E[:, 1], E[:, 0]))]
    return CanonicalForm(Permutation._raw(inv.astype(INDEX)), E, _hash_edges(g.n, E), g.n)


def are_isomorphic(g1: Graph, g2: Graph) -> Permutation | None:
    """An isomorphism ``v -> phi[v]`` from g1 onto g2, or None."""
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return None
    if not np.array_equal(np.sort(g1.degrees()), np.sort(g2.degrees())):
        return None
    c1, c2 = canonical_form(g1), canonical_form(g2)
    if not np.array_equal(c1.canonical_edge_list, c2.canonical_edge_list):
        return None
    inv2 = np.empty(g2.n, dtype=INDEX)
    inv2[c2.relabeling.array] = np.arange(g2.n)
    phi = inv2[c1.relabeling.array]
    if not _is_isomorphism(g1, g2, phi):
        raise AssertionError("canonical forms agree but the induced map is not an isomorphism")
    return Permutation._raw(phi)


def _is_isomorphism(g1: Graph, g2: Graph, phi: np.ndarray) -> bool:
    E = phi[g1.edges()]
    E.sort(axis=1)
    E = E[np.lexsort((E[:, 1], E[:, 0]))]
    return np.array_equal(E, g2.edges())


def is_automorphism(g: Graph, phi: np.ndarray) -> bool:
    return _is_isomorphism(g, g, np.asarray(phi))


@dataclass
class AutomorphismGroup:
    group: PermutationGroup
    order: int
    generators: list[Permutation]
    search: SearchResult


def automorphism_group(g: Graph, colors=None, *, cap: int = VERTEX_CAP) -> AutomorphismGroup:
    if g.n > cap:
        raise VertexCapExceeded(f"{g.n} vertices exceeds the cap of {cap}")
    res = _search(g, colors)
    gens = [Permutation._raw(a.astype(INDEX)) for a in res.generators]
    for a in res.generators:
        if not is_automorphism(g, a):
            raise AssertionError("search produced a non-automorphism")
    n = max(g.n, 1)
    G = PermutationGroup(gens, degree=n, base=res.first_path, order_bound=res.order)
    if G.order() != res.order:
        raise AssertionError(f"generators give order {G.order()}, search says {res.order}")
    return AutomorphismGroup(G, res.order, gens, res)


def automorphism_count_bruteforce(g: Graph) -> int:
    """Count automorphisms by plain backtracking over vertex images."""
    n = g.n
    adj = [set(g.neighbors(v).tolist()) for v in range(n)]
    deg = [len(a) for a in adj]
    img = [-1] * n
    used = [False] * n
    count = 0

    def extend(v: int) -> None:
        nonlocal count
        if v == n:
            count += 1
            return
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            if all((u in adj[v]) == (img[u] in adj[w]) for u in range(v)):
                img[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        img[v] = -1

    extend(0)
    return count


@dataclass
class InvariantSignature:
    degree_sequence: tuple[int, ...]
    girth: int
    cycle_counts: dict[int, int]
    color_histogram: tuple[int, ...]

    def as_dict(self) -> dict:
        degs: dict[int, int] = {}
        for d in self.degree_sequence:
            degs[d] = degs.get(d, 0) + 1
        return {
            "degree_counts": {str(k): v for k, v in sorted(degs.items())},
            "girth": self.girth,
            "cycle_counts": {str(k): v for k, v in sorted(self.cycle_counts.items())},
            "refined_cell_sizes": list(self.color_histogram),
        }

    def differences(self, other: "InvariantSignature") -> list[str]:
        a, b = self.as_dict(), other.as_dict()
        out = []
        for key in a:
            if key == "cycle_counts":
                for k in a[key]:
                    if a[key][k] != b[key].get(k):
                        out.append(f"{k}-cycles: {a[key][k]} vs {b[key].get(k)}")
            elif a[key] != b[key]:
                out.append(f"{key}: {a[key]} vs {b[key]}")
        return out


def invariant_signature(g: Graph, max_cycle: int = 8) -> InvariantSignature:
    counts = kernels.cycle_counts(g.indptr, g.indices, max_cycle)
    girth = next((k for k in range(3, max_cycle + 1) if counts[k] > 0), None)
    if girth is None:
        girth = int(kernels.girth(g.indptr, g.indices))
    cols = refine(ColoredGraph(g, np.zeros(g.n, dtype=np.int64)))
    hist = tuple(sorted(np.bincount(cols).tolist(), reverse=True)) if g.n else ()
    return InvariantSignature(tuple(sorted(g.degrees().tolist())), int(girth),
                              {k: int(counts[k]) for k in range(3, max_cycle + 1)}, hist)
