"""Graphs, coset spaces, and the constructions built from groups.

Graphs are stored in CSR form (``indptr``/``indices`` with sorted neighbor
lists).  Coset spaces ``K\\G`` identify a coset by its lexicographically least
element, found with ``K``'s stabilizer chain on base ``0, 1, ..., n-1``;
cosets are numbered breadth-first from ``K`` over ``G``'s generators in their
given order, so vertex 0 is always ``K`` itself.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .group import PermutationGroup
from .perm import INDEX, DegreeMismatch, Permutation


class GraphError(ValueError):
    pass


class GraphFormatError(GraphError):
    def __init__(self, path: str, line: int, msg: str):
        super().__init__(f"{path}:{line}: {msg}")
        self.line = line


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "indptr", "indices")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray, *, check: bool = True):
        self.n = int(n)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        if check:
            self._check()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] | np.ndarray) -> "Graph":
        E = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        E = E.reshape(-1, 2)
        if E.size and (E.min() < 0 or E.max() >= n):
            raise GraphError("edge endpoint out of range")
        if np.any(E[:, 0] == E[:, 1]):
            raise GraphError("loops are not allowed")
        both = np.concatenate([E, E[:, ::-1]])
        both = np.unique(both, axis=0) if both.size else both.reshape(0, 2)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, both[:, 0] + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(n, indptr, both[:, 1].copy(), check=False)

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        edges = [(u, w) for u, nb in enumerate(adj) for w in nb]
        g = cls.from_edges(len(adj), edges)
        g._check()
        return g

    def _check(self) -> None:
        n = self.n
        if self.indptr.shape != (n + 1,) or self.indptr[0] != 0 or self.indptr[-1] != len(self.indices):
            raise GraphError("malformed CSR arrays")
        rows = np.repeat(np.arange(n), np.diff(self.indptr))
        if np.any(self.indices == rows):
            raise GraphError("loop")
        if len(self.indices):
            d = np.diff(self.indices)
            same_row = rows[1:] == rows[:-1]
            if np.any(same_row & (d <= 0)):
                raise GraphError("neighbor lists must be strictly increasing")
        fwd = rows * n + self.indices
        back = self.indices * n + rows
        if not np.array_equal(np.sort(fwd), np.sort(back)):
            raise GraphError("adjacency is not symmetric")

    @property
    def vertex_count(self) -> int:
        return self.n

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range 0..{self.n - 1}")
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def adjacency(self) -> list[list[int]]:
        return [self.neighbors(v).tolist() for v in range(self.n)]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def valency(self) -> int | None:
        d = self.degrees()
        if len(d) and np.all(d == d[0]):
            return int(d[0])
        return None

    def edges(self) -> np.ndarray:
        """Edges ``(u, v)`` with ``u < v``, sorted lexicographically."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        mask = rows < self.indices
        return np.stack([rows[mask], self.indices[mask]], axis=1)

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def relabeled(self, perm: Sequence[int] | np.ndarray) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        p = np.asarray(perm, dtype=np.int64)
        E = p[self.edges()]
        return Graph.from_edges(self.n, E)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and np.array_equal(self.indptr, other.indptr) and np.array_equal(self.indices, other.indices))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


# --- edge-list files ---------------------------------------------------------

def format_edge_list(g: Graph) -> str:
    E = g.edges()
    lines = [f"graph {g.n} {len(E)}"]
    lines += [f"{u} {v}" for u, v in E.tolist()]
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path: str | os.PathLike) -> None:
    Path(path).write_text(format_edge_list(g), encoding="utf-8")


def parse_edge_list(text: str, path: str = "<string>") -> Graph:
    lines = text.replace("\r\n", "\n").split("\n")
    header = None
    edges = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if header is None:
            if len(tok) != 3 or tok[0] != "graph":
                raise GraphFormatError(path, lineno, "expected header 'graph <n> <m>'")
            try:
                header = (int(tok[1]), int(tok[2]))
            except ValueError:
                raise GraphFormatError(path, lineno, "non-integer in header") from None
            if header[0] < 0 or header[1] < 0:
                raise GraphFormatError(path, lineno, "negative count in header")
            continue
        if len(tok) != 2:
            raise GraphFormatError(path, lineno, "expected 'u v'")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise GraphFormatError(path, lineno, "non-integer vertex") from None
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise GraphFormatError(path, lineno, f"vertex out of range 0..{header[0] - 1}")
        if u == v:
            raise GraphFormatError(path, lineno, "loop")
        edges.append((u, v))
    if header is None:
        raise GraphFormatError(path, max(1, len(lines)), "missing header")
    g = Graph.from_edges(header[0], edges)
    if g.edge_count != header[1] or len(edges) != header[1]:
        raise GraphFormatError(path, 1, f"header says {header[1]} edges, found {len(edges)} "
                                        f"({g.edge_count} distinct)")
    return g


def read_edge_list(path: str | os.PathLike) -> Graph:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphFormatError(str(p), 0, f"cannot read: {exc.strerror}") from None
    return parse_edge_list(text, str(p))


# --- coset spaces and actions ------------------------------------------------

class _LexMin:
    """Vectorized least element of a right coset ``K x``."""

    def __init__(self, K: PermutationGroup):
        n = K.degree
        chain = K.rebased(list(range(n)))
        self.steps = []
        for lev in chain.levels:
            if len(lev.orbit) <= 1:
                continue
            orbit = np.array(sorted(lev.orbit), dtype=np.int64)
            reps = np.stack([lev.rep(int(d)) for d in orbit]).astype(np.int64)
            self.steps.append((orbit, reps))

    def __call__(self, X: np.ndarray) -> np.ndarray:
        Y = np.asarray(X, dtype=np.int64)
        if Y.ndim == 1:
            return self(Y[None, :])[0]
        for orbit, reps in self.steps:
            j = np.argmin(Y[:, orbit], axis=1)
            # least image at this base point comes from u_d with d = orbit[j]
            Y = np.take_along_axis(Y, reps[j], axis=1)
        return Y


@dataclass
class CosetSpace:
    group: PermutationGroup
    subgroup: PermutationGroup
    index: int
    reps: np.ndarray          # least element of each coset, row i <-> coset i
    _lexmin: _LexMin
    _lookup: dict

    @property
    def representatives(self) -> list[Permutation]:
        return [Permutation._raw(r.astype(INDEX)) for r in self.reps]

    def keys(self, X: np.ndarray) -> list[bytes]:
        return [r.tobytes() for r in self._lexmin(X)]

    def index_of_rows(self, X: np.ndarray) -> np.ndarray:
        Y = self._lexmin(np.asarray(X, dtype=np.int64).reshape(-1, self.group.degree))
        try:
            return np.array([self._lookup[r.tobytes()] for r in Y], dtype=np.int64)
        except KeyError:
            raise GraphError("element is not in the ambient group") from None

    def index_of(self, x: Permutation) -> int:
        return int(self.index_of_rows(x.array[None, :])[0])


class GroupAction:
    """A group acting on ``point_count`` points, one image array per generator."""

    def __init__(self, group: PermutationGroup, gen_images: list[np.ndarray],
                 space: CosetSpace | None = None):
        self.group = group
        self.gen_images = [np.asarray(a, dtype=np.int64) for a in gen_images]
        self.point_count = len(self.gen_images[0]) if self.gen_images else 0
        self.space = space
        self._perm_group: PermutationGroup | None = None

    def images(self, j: int, p: int) -> int:
        return int(self.gen_images[j][p])

    def permutations(self) -> list[Permutation]:
        return [Permutation._raw(a.astype(INDEX)) for a in self.gen_images]

    def image_of(self, x: Permutation) -> Permutation:
        """The permutation induced by an arbitrary element (coset actions only)."""
        if self.space is None:
            raise GraphError("image_of needs a coset action")
        rows = self.space.reps[:, :]
        prod = x.array[rows]              # rep_i * x
        return Permutation._raw(self.space.index_of_rows(prod).astype(INDEX))

    def as_group(self) -> PermutationGroup:
        """The image group on the points; its order is at most ``|group|``."""
        if self._perm_group is None:
            perms = [p for p in self.permutations() if not p.is_identity()]
            bound = self.group.order() if self.group is not None else None
            self._perm_group = PermutationGroup(perms, degree=self.point_count, order_bound=bound)
        return self._perm_group

    @classmethod
    def from_permutations(cls, group: PermutationGroup, perms: Sequence[Permutation]) -> "GroupAction":
        return cls(group, [p.array for p in perms])


def _check_subgroup(G: PermutationGroup, K: PermutationGroup) -> None:
    if G.degree != K.degree:
        raise DegreeMismatch(f"degree {K.degree} vs {G.degree}")
    for k in K.generators:
        if not G.contains(k):
            raise GraphError("K is not a subgroup of G")


def core_is_trivial(G: PermutationGroup, K: PermutationGroup) -> bool:
    """Whether no nontrivial normal subgroup of G lies in K."""
    if K.order() == 1:
        return True
    if K.order() <= 100_000:
        C = {e.key(): e for e in K.elements()}
        gens = [g for g in G.generators if not g.is_identity()]
        changed = True
        while changed and len(C) > 1:
            changed = False
            for key in list(C):
                c = C[key]
                if any((c ** g).key() not in C for g in gens):
                    del C[key]
                    changed = True
        return len(C) == 1
    raise GraphError("core test needs |K| <= 100000")


def coset_action(G: PermutationGroup, K: PermutationGroup, *, limit: int = 2_000_000
                 ) -> tuple[CosetSpace, GroupAction, bool]:
    """Right-multiplication action of G on the right cosets of K.

    Returns the coset space, the action and whether it is faithful.
    """
    _check_subgroup(G, K)
    index = G.order() // K.order()
    if index > limit:
        raise GraphError(f"index {index} exceeds limit {limit}")
    lexmin = _LexMin(K)
    n = G.degree
    gens = [g.array.astype(np.int64) for g in G.generators]
    start = lexmin(np.arange(n, dtype=np.int64))
    lookup = {start.tobytes(): 0}
    reps = [start]
    images = [np.full(index, -1, dtype=np.int64) for _ in gens]
    layer = np.array([0])
    while len(layer):
        R = np.stack([reps[i] for i in layer])
        cand = [lexmin(g[R]) for g in gens]     # rep * g
        nxt = []
        for a, i in enumerate(layer):
            for j in range(len(gens)):
                row = cand[j][a]
                key = row.tobytes()
                k = lookup.get(key)
                if k is None:
                    k = len(reps)
                    lookup[key] = k
                    reps.append(row)
                    nxt.append(k)
                images[j][i] = k
        layer = np.array(nxt, dtype=np.int64)
    if len(reps) != index:
        raise GraphError(f"found {len(reps)} cosets, expected {index}")
    space = CosetSpace(G, K, index, np.stack(reps), lexmin, lookup)
    action = GroupAction(G, images, space)
    # faithful iff the core of K is trivial iff the image has order |G|
    faithful = action.as_group().order() == G.order()
    return space, action, faithful


def normalizes(K: PermutationGroup, g: Permutation) -> bool:
    return all(K.contains(k ** g) for k in K.generators)


@dataclass
class CosetGraph:
    graph: Graph
    space: CosetSpace
    action: GroupAction
    faithful: bool
    connected: bool
    g: Permutation


def coset_graph(G: PermutationGroup, K: PermutationGroup, g: Permutation, *,
                space: tuple[CosetSpace, GroupAction, bool] | None = None) -> CosetGraph:
    """``Gamma(G, K, g)``: ``Kx ~ Ky`` iff ``x y^-1`` lies in ``KgK``."""
    _check_subgroup(G, K)
    if not G.contains(g):
        raise GraphError("g is not in G")
    if normalizes(K, g):
        raise GraphError("g normalizes K")
    if not K.contains(g * g):
        raise GraphError("g^2 is not in K")
    sp, act, faithful = space if space is not None else coset_action(G, K)
    Kel = K.element_array().astype(np.int64)
    gk = Kel[:, g.array]                    # g * k
    nb0 = np.unique(sp.index_of_rows(gk))
    # one element per neighbor coset of K, then translate by every rep
    first = {}
    for idx, row in zip(sp.index_of_rows(gk).tolist(), gk):
        first.setdefault(idx, row)
    B = np.stack([first[i] for i in nb0.tolist()])
    R = sp.reps
    prod = R[:, B].transpose(1, 0, 2)          # (nb, V, n): rep_v[b]  = b * rep_v
    nbr = sp.index_of_rows(prod.reshape(-1, G.degree)).reshape(len(nb0), -1).T
    V = sp.index
    src = np.repeat(np.arange(V), len(nb0))
    E = np.stack([src, nbr.reshape(-1)], axis=1)
    graph = Graph.from_edges(V, E[E[:, 0] < E[:, 1]])
    graph._check()
    if not np.all(graph.degrees() == len(nb0)):
        raise GraphError("coset graph is not regular; adjacency not symmetric")
    gen = PermutationGroup(list(K.generators) + [g], order_bound=G.order())
    return CosetGraph(graph, sp, act, faithful, gen.order() == G.order(), g)


def coset_graph_bruteforce(G: PermutationGroup, K: PermutationGroup, g: Permutation) -> Graph:
    """Definition-chasing oracle: enumerate cosets and test ``x y^-1 in KgK``."""
    sp, _, _ = coset_action(G, K)
    Kel = K.elements()
    dc = {(a * g * b).key() for a in Kel for b in Kel}
    reps = sp.representatives
    edges = []
    for i, x in enumerate(reps):
        for j in range(i + 1, len(reps)):
            if (x * reps[j].inverse()).key() in dc:
                edges.append((i, j))
    return Graph.from_edges(len(reps), edges)


@dataclass
class CayleyGraph:
    graph: Graph
    elements: np.ndarray
    connected: bool

    def index_of(self, x: Permutation) -> int:
        key = x.array.astype(self.elements.dtype).tobytes()
        for i, r in enumerate(self.elements):
            if r.tobytes() == key:
                return i
        raise KeyError(x)


def cayley_graph(G: PermutationGroup, S: Sequence[Permutation], *, limit: int = 2_000_000) -> CayleyGraph:
    """``Cay(G, S)``: ``x ~ y`` iff ``y x^-1`` is in ``S``."""
    S = list(S)
    keys = {s.key() for s in S}
    for s in S:
        if s.is_identity():
            raise GraphError("identity in connection set")
        if s.inverse().key() not in keys:
            raise GraphError("connection set not closed under inverses")
        if not G.contains(s):
            raise GraphError("connection set element outside the group")
    E = G.element_array(limit=limit).astype(np.int64)
    lookup = {r.tobytes(): i for i, r in enumerate(E)}
    N = len(E)
    nbr = np.empty((N, len(S)), dtype=np.int64)
    for j, s in enumerate(S):
        P = E[:, s.array]                        # s * x
        nbr[:, j] = [lookup[r.tobytes()] for r in P]
    src = np.repeat(np.arange(N), len(S))
    Ed = np.stack([src, nbr.reshape(-1)], axis=1)
    graph = Graph.from_edges(N, Ed[Ed[:, 0] < Ed[:, 1]])
    sub = PermutationGroup(S, degree=G.degree, order_bound=G.order()) if S else None
    connected = sub is not None and sub.order() == G.order()
    return CayleyGraph(graph, E, connected)


def quotient_graph(g: Graph, blocks: Sequence[Sequence[int]]) -> Graph:
    label = np.full(g.n, -1, dtype=np.int64)
    for b, blk in enumerate(blocks):
        for v in blk:
            if not 0 <= v < g.n or label[v] >= 0:
                raise GraphError("blocks do not form a partition")
            label[v] = b
    if np.any(label < 0):
        raise GraphError("blocks do not cover every vertex")
    E = label[g.edges()]
    E = E[E[:, 0] != E[:, 1]]
    E = np.sort(E, axis=1)
    return Graph.from_edges(len(blocks), E)


def neighborhood(g: Graph, v: int) -> list[int]:
    return g.neighbors(v).tolist()


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def components(g: Graph) -> list[list[int]]:
    seen = np.zeros(g.n, dtype=bool)
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        frontier = np.array([s])
        seen[s] = True
        comp = [s]
        while len(frontier):
            nb = np.concatenate([g.indices[g.indptr[v]:g.indptr[v + 1]] for v in frontier])
            nb = np.unique(nb[~seen[nb]])
            seen[nb] = True
            comp.extend(nb.tolist())
            frontier = nb
        out.append(sorted(comp))
    return out


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
