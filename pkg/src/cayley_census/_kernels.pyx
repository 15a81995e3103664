# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see _kernels_py for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free, calloc

ctypedef cnp.int64_t i64


def refine(const i64[:] indptr, const i64[:] indices, i64[:] lab, i64[:] inv,
           i64[:] cell, i64[:] cellsize, queue):
    cdef Py_ssize_t n = lab.shape[0]
    cdef Py_ssize_t ncells = 0, p, k, W, C, size, i, s, u, w, v, nt, ntc, qh, qt
    cdef Py_ssize_t maxkey, a, nfr, big, bigsize, skip
    cdef i64 *count = <i64*> calloc(n, sizeof(i64))
    cdef char *in_queue = <char*> calloc(n, sizeof(char))
    cdef char *cmark = <char*> calloc(n, sizeof(char))
    cdef i64 *q = <i64*> malloc((n + 1) * sizeof(i64))
    cdef i64 *touched = <i64*> malloc(n * sizeof(i64))
    cdef i64 *tcells = <i64*> malloc(n * sizeof(i64))
    cdef i64 *buf = <i64*> malloc(n * sizeof(i64))
    cdef i64 *keys = <i64*> malloc(n * sizeof(i64))
    cdef i64 *hist = NULL
    cdef i64 *frs = <i64*> malloc((n + 1) * sizeof(i64))
    cdef Py_ssize_t hist_cap = 0
    try:
        for p in range(n):
            if cell[p] == p:
                ncells += 1
        # circular queue holding at most n distinct starts
        qh = 0
        qt = 0
        for s in queue:
            if not in_queue[s]:
                in_queue[s] = 1
                q[qt] = s
                qt = (qt + 1) % (n + 1)
        while qh != qt and ncells < n:
            W = q[qh]
            qh = (qh + 1) % (n + 1)
            in_queue[W] = 0
            nt = 0
            for p in range(W, W + cellsize[W]):
                w = lab[p]
                for k in range(indptr[w], indptr[w + 1]):
                    u = indices[k]
                    if count[u] == 0:
                        touched[nt] = u
                        nt += 1
                    count[u] += 1
            ntc = 0
            for i in range(nt):
                C = cell[inv[touched[i]]]
                if not cmark[C]:
                    cmark[C] = 1
                    tcells[ntc] = C
                    ntc += 1
            _sort_i64(tcells, ntc)
            for i in range(ntc):
                C = tcells[i]
                cmark[C] = 0
                size = cellsize[C]
                if size == 1:
                    continue
                maxkey = 0
                a = 1
                for p in range(size):
                    keys[p] = count[lab[C + p]]
                    if keys[p] > maxkey:
                        maxkey = keys[p]
                    if keys[p] != keys[0]:
                        a = 0
                if a:
                    continue
                if maxkey + 2 > hist_cap:
                    free(hist)
                    hist_cap = 2 * (maxkey + 2)
                    hist = <i64*> malloc(hist_cap * sizeof(i64))
                for p in range(maxkey + 2):
                    hist[p] = 0
                for p in range(size):
                    hist[keys[p] + 1] += 1
                # fragment boundaries from the histogram
                nfr = 0
                for p in range(maxkey + 1):
                    if hist[p + 1] > 0:
                        frs[nfr] = p
                        nfr += 1
                for p in range(1, maxkey + 2):
                    hist[p] += hist[p - 1]
                # stable counting sort
                for p in range(size):
                    buf[hist[keys[p]]] = lab[C + p]
                    hist[keys[p]] += 1
                for p in range(size):
                    v = buf[p]
                    lab[C + p] = v
                    inv[v] = C + p
                # hist[key] is now the end offset of that key's fragment
                s = 0
                big = -1
                bigsize = -1
                for a in range(nfr):
                    k = hist[frs[a]]
                    for p in range(C + s, C + k):
                        cell[p] = C + s
                    cellsize[C + s] = k - s
                    if k - s > bigsize:
                        bigsize = k - s
                        big = a
                    frs[a] = C + s
                    s = k
                ncells += nfr - 1
                # C already queued: it now names fragment 0, so push the rest;
                # otherwise push all but the largest
                skip = 0 if in_queue[C] else big
                for a in range(nfr):
                    if a == skip:
                        continue
                    s = frs[a]
                    if not in_queue[s]:
                        in_queue[s] = 1
                        q[qt] = s
                        qt = (qt + 1) % (n + 1)
            for i in range(nt):
                count[touched[i]] = 0
        return ncells
    finally:
        free(count); free(in_queue); free(cmark); free(q); free(touched)
        free(tcells); free(buf); free(keys); free(hist); free(frs)


cdef void _sort_i64(i64 *a, Py_ssize_t n) noexcept nogil:
    # insertion sort for short runs, heap sort otherwise
    cdef Py_ssize_t i, j
    cdef i64 x
    if n < 32:
        for i in range(1, n):
            x = a[i]
            j = i - 1
            while j >= 0 and a[j] > x:
                a[j + 1] = a[j]
                j -= 1
            a[j + 1] = x
        return
    for i in range(n // 2 - 1, -1, -1):
        _sift(a, i, n)
    for i in range(n - 1, 0, -1):
        x = a[0]; a[0] = a[i]; a[i] = x
        _sift(a, 0, i)


cdef void _sift(i64 *a, Py_ssize_t i, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t c
    cdef i64 x
    while True:
        c = 2 * i + 1
        if c >= n:
            return
        if c + 1 < n and a[c + 1] > a[c]:
            c += 1
        if a[i] >= a[c]:
            return
        x = a[i]; a[i] = a[c]; a[c] = x
        i = c


cdef inline i64 _find(i64 *parent, i64 a) noexcept nogil:
    cdef i64 root = a, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


def orbit_labels(perms_in):
    cdef const i64[:, :] perms = np.ascontiguousarray(perms_in, dtype=np.int64)
    cdef Py_ssize_t m = perms.shape[0], n = perms.shape[1], r, a
    out = np.arange(n, dtype=np.int64)
    cdef i64[:] parent = out
    cdef i64 ra, rb
    with nogil:
        for r in range(m):
            for a in range(n):
                ra = _find(&parent[0], a)
                rb = _find(&parent[0], perms[r, a])
                if ra != rb:
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
        for a in range(n):
            parent[a] = _find(&parent[0], a)
    return out


def cycle_counts(const i64[:] indptr, const i64[:] indices, int maxlen):
    cdef Py_ssize_t n = indptr.shape[0] - 1, s, v, u, top, depth
    counts_arr = np.zeros(maxlen + 1, dtype=np.int64)
    cdef i64[:] counts = counts_arr
    cdef char *on_path = <char*> calloc(n, sizeof(char))
    cdef i64 *sv = <i64*> malloc((maxlen + 2) * sizeof(i64))
    cdef i64 *sk = <i64*> malloc((maxlen + 2) * sizeof(i64))
    try:
        with nogil:
            for s in range(n):
                on_path[s] = 1
                top = 0
                sv[0] = s
                sk[0] = indptr[s]
                while top >= 0:
                    v = sv[top]
                    depth = top + 1
                    if sk[top] == indptr[v + 1]:
                        if v != s:
                            on_path[v] = 0
                        top -= 1
                        continue
                    u = indices[sk[top]]
                    sk[top] += 1
                    if u == s:
                        if depth >= 3:
                            counts[depth] += 1
                        continue
                    if u < s or on_path[u] or depth == maxlen:
                        continue
                    on_path[u] = 1
                    top += 1
                    sv[top] = u
                    sk[top] = indptr[u]
                on_path[s] = 0
    finally:
        free(on_path); free(sv); free(sk)
    return counts_arr // 2


def girth(const i64[:] indptr, const i64[:] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1, s, v, u, k, head, tail, c
    cdef Py_ssize_t best = 0
    cdef i64 *dist = <i64*> malloc(n * sizeof(i64))
    cdef i64 *par = <i64*> malloc(n * sizeof(i64))
    cdef i64 *dq = <i64*> malloc(n * sizeof(i64))
    try:
        with nogil:
            for v in range(n):
                dist[v] = -1
                par[v] = -1
            for s in range(n):
                head = 0
                tail = 1
                dq[0] = s
                dist[s] = 0
                while head < tail:
                    v = dq[head]
                    if best and 2 * dist[v] + 1 >= best:
                        break
                    head += 1
                    for k in range(indptr[v], indptr[v + 1]):
                        u = indices[k]
                        if dist[u] < 0:
                            dist[u] = dist[v] + 1
                            par[u] = v
                            dq[tail] = u
                            tail += 1
                        elif par[v] != u:
                            c = dist[u] + dist[v] + 1
                            if not best or c < best:
                                best = c
                for k in range(tail):
                    dist[dq[k]] = -1
                    par[dq[k]] = -1
    finally:
        free(dist); free(par); free(dq)
    return best
