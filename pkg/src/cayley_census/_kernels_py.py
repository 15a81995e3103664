"""Pure-Python versions of the hot kernels.

Semantics match ``_kernels.pyx`` exactly; the test suite runs both and
compares.  Arrays are converted to lists on entry because list indexing is
much faster than numpy scalar access from Python.
"""

from __future__ import annotations

from collections import deque

import numpy as np


def refine(indptr, indices, lab, inv, cell, cellsize, queue) -> int:
    """Refine the ordered partition in place to the coarsest equitable one.

    ``lab[p]`` is the vertex at position ``p``, ``inv`` its inverse,
    ``cell[p]`` the start position of the cell holding ``p`` and
    ``cellsize[s]`` the size of the cell starting at ``s``.  ``queue`` lists
    the start positions of the splitter cells.  Returns the number of cells.
    """
    ip = indptr.tolist()
    ix = indices.tolist()
    L = lab.tolist()
    I = inv.tolist()
    Cl = cell.tolist()
    Sz = cellsize.tolist()
    n = len(L)
    ncells = sum(1 for p in range(n) if Cl[p] == p)
    in_queue = [False] * n
    q = deque()
    for s in queue:
        s = int(s)
        if not in_queue[s]:
            in_queue[s] = True
            q.append(s)
    count = [0] * n
    while q and ncells < n:
        W = q.popleft()
        in_queue[W] = False
        touched = []
        for p in range(W, W + Sz[W]):
            w = L[p]
            for k in range(ip[w], ip[w + 1]):
                u = ix[k]
                if count[u] == 0:
                    touched.append(u)
                count[u] += 1
        cells = sorted({Cl[I[u]] for u in touched})
        for C in cells:
            size = Sz[C]
            if size == 1:
                continue
            verts = L[C:C + size]
            keys = [count[v] for v in verts]
            k0 = keys[0]
            if all(k == k0 for k in keys):
                continue
            order = sorted(range(size), key=lambda i: keys[i])
            verts = [verts[i] for i in order]
            keys = [keys[i] for i in order]
            starts = [0]
            for i in range(1, size):
                if keys[i] != keys[i - 1]:
                    starts.append(i)
            starts.append(size)
            for i, v in enumerate(verts):
                L[C + i] = v
                I[v] = C + i
            frags = []
            for a, b in zip(starts, starts[1:]):
                s = C + a
                for p in range(s, C + b):
                    Cl[p] = s
                Sz[s] = b - a
                frags.append((s, b - a))
            ncells += len(frags) - 1
            if in_queue[C]:
                push = frags[1:]
            else:
                big = max(range(len(frags)), key=lambda i: (frags[i][1], -i))
                push = [f for i, f in enumerate(frags) if i != big]
            for s, _ in push:
                if not in_queue[s]:
                    in_queue[s] = True
                    q.append(s)
        for u in touched:
            count[u] = 0
    lab[:] = L
    inv[:] = I
    cell[:] = Cl
    cellsize[:] = Sz
    return ncells


def orbit_labels(perms) -> np.ndarray:
    """Component label (smallest member) of every point under the given permutations."""
    perms = np.asarray(perms)
    n = perms.shape[1]
    parent = list(range(n))

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for row in perms.tolist():
        for a, b in enumerate(row):
            ra, rb = find(a), find(b)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
    return np.array([find(a) for a in range(n)], dtype=np.int64)


def cycle_counts(indptr, indices, maxlen: int) -> np.ndarray:
    """Number of simple cycles of each length ``0..maxlen`` (entries < 3 are 0)."""
    ip = indptr.tolist()
    ix = indices.tolist()
    n = len(ip) - 1
    counts = [0] * (maxlen + 1)
    on_path = [False] * n
    for s in range(n):
        on_path[s] = True
        stack = [(s, ip[s], 1)]
        path = [s]
        while stack:
            v, k, depth = stack[-1]
            if k == ip[v + 1]:
                stack.pop()
                path.pop()
                if v != s:
                    on_path[v] = False
                continue
            stack[-1] = (v, k + 1, depth)
            u = ix[k]
            if u == s:
                if depth >= 3:
                    counts[depth] += 1
                continue
            if u < s or on_path[u] or depth == maxlen:
                continue
            on_path[u] = True
            path.append(u)
            stack.append((u, ip[u], depth + 1))
        on_path[s] = False
    return np.array([c // 2 for c in counts], dtype=np.int64)


def girth(indptr, indices) -> int:
    """Length of a shortest cycle, or 0 for a forest."""
    ip = indptr.tolist()
    ix = indices.tolist()
    n = len(ip) - 1
    best = 0
    dist = [-1] * n
    par = [-1] * n
    for s in range(n):
        seen = [s]
        dist[s] = 0
        dq = deque([s])
        while dq:
            v = dq.popleft()
            if best and 2 * dist[v] + 1 >= best:
                break
            for k in range(ip[v], ip[v + 1]):
                u = ix[k]
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    par[u] = v
                    seen.append(u)
                    dq.append(u)
                elif par[v] != u:
                    c = dist[u] + dist[v] + 1
                    if not best or c < best:
                        best = c
        for v in seen:
            dist[v] = -1
            par[v] = -1
    return best
