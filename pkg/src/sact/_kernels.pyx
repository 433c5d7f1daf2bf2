# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Signatures and output order match ``_kernels_py``."""

from libc.stdlib cimport malloc, free


cdef struct CanonCtx:
    int m
    int n
    int *action
    int *perm
    int *inv
    int *allowed      # n * n, row p lists candidate elements
    int *nallowed
    int *cur
    int *best
    int *best_perm
    bint have_best


cdef void _canon_rec(CanonCtx *c, int p):
    cdef int k, a, s, q, i, n = c.n, m = c.m
    cdef int v, w
    if p == n:
        i = 0
        for s in range(m):
            for q in range(n):
                c.cur[i] = c.perm[c.action[s * n + c.inv[q]]]
                i += 1
        if c.have_best:
            for i in range(m * n):
                v = c.cur[i]
                w = c.best[i]
                if v < w:
                    break
                if v > w:
                    return
            else:
                return
        for i in range(m * n):
            c.best[i] = c.cur[i]
        for i in range(n):
            c.best_perm[i] = c.perm[i]
        c.have_best = True
        return
    for k in range(c.nallowed[p]):
        a = c.allowed[p * n + k]
        if c.perm[a] == -1:
            c.perm[a] = p
            c.inv[p] = a
            _canon_rec(c, p + 1)
            c.perm[a] = -1
            c.inv[p] = -1


def canon_search(action, int m, int n, cells):
    if n == 0:
        return (), ()
    cdef CanonCtx c
    cdef int i, p, a, start
    c.m = m
    c.n = n
    c.have_best = False
    c.action = <int *> malloc(m * n * sizeof(int))
    c.perm = <int *> malloc(n * sizeof(int))
    c.inv = <int *> malloc(n * sizeof(int))
    c.allowed = <int *> malloc(n * n * sizeof(int))
    c.nallowed = <int *> malloc(n * sizeof(int))
    c.cur = <int *> malloc(m * n * sizeof(int))
    c.best = <int *> malloc(m * n * sizeof(int))
    c.best_perm = <int *> malloc(n * sizeof(int))
    try:
        for i in range(m * n):
            c.action[i] = action[i]
        for i in range(n):
            c.perm[i] = -1
            c.inv[i] = -1
        counts = {}
        for x in cells:
            counts[x] = counts.get(x, 0) + 1
        start = 0
        for key in sorted(counts):
            members = [a for a in range(n) if cells[a] == key]
            for p in range(start, start + counts[key]):
                c.nallowed[p] = len(members)
                for i in range(len(members)):
                    c.allowed[p * n + i] = members[i]
            start += counts[key]
        _canon_rec(&c, 0)
        enc = tuple([c.best[i] for i in range(m * n)])
        perm = tuple([c.best_perm[i] for i in range(n)])
        return enc, perm
    finally:
        free(c.action)
        free(c.perm)
        free(c.inv)
        free(c.allowed)
        free(c.nallowed)
        free(c.cur)
        free(c.best)
        free(c.best_perm)


cdef struct HomCtx:
    int m
    int ns
    int nt
    int *src
    int *tgt
    int *f
    int *trail       # ns * ns scratch, one row per depth


cdef void _hom_rec(HomCtx *c, int i, int depth, list out):
    cdef int b, s, x, y, k, ntrail
    cdef bint ok
    while i < c.ns and c.f[i] != -1:
        i += 1
    if i == c.ns:
        out.append(tuple([c.f[k] for k in range(c.ns)]))
        return
    for b in range(c.nt):
        ntrail = 0
        ok = True
        for s in range(c.m):
            x = c.src[s * c.ns + i]
            y = c.tgt[s * c.nt + b]
            if c.f[x] == -1:
                c.f[x] = y
                c.trail[depth * c.ns + ntrail] = x
                ntrail += 1
            elif c.f[x] != y:
                ok = False
                break
        if ok:
            _hom_rec(c, i + 1, depth + 1, out)
        for k in range(ntrail):
            c.f[c.trail[depth * c.ns + k]] = -1


def hom_search(src, int m, int n_src, tgt, int n_tgt):
    if n_src == 0:
        return [()]
    if n_tgt == 0:
        return []
    cdef HomCtx c
    cdef int i
    c.m = m
    c.ns = n_src
    c.nt = n_tgt
    c.src = <int *> malloc(m * n_src * sizeof(int))
    c.tgt = <int *> malloc(m * n_tgt * sizeof(int))
    c.f = <int *> malloc(n_src * sizeof(int))
    c.trail = <int *> malloc(n_src * n_src * sizeof(int))
    out = []
    try:
        for i in range(m * n_src):
            c.src[i] = src[i]
        for i in range(m * n_tgt):
            c.tgt[i] = tgt[i]
        for i in range(n_src):
            c.f[i] = -1
        _hom_rec(&c, 0, 0, out)
        return out
    finally:
        free(c.src)
        free(c.tgt)
        free(c.f)
        free(c.trail)


cdef struct ConCtx:
    int m
    int n
    int *action
    int *rgs
    int *first


cdef bint _con_ok(ConCtx *c, int i):
    cdef int j, k, s, x, y, n = c.n
    cdef int bi = c.rgs[i]
    for j in range(i):
        if c.rgs[j] != bi:
            continue
        for s in range(c.m):
            x = c.action[s * n + i]
            y = c.action[s * n + j]
            if x <= i and y <= i and c.rgs[x] != c.rgs[y]:
                return False
    for j in range(i + 1):
        for k in range(j):
            if c.rgs[j] != c.rgs[k]:
                continue
            for s in range(c.m):
                x = c.action[s * n + j]
                y = c.action[s * n + k]
                if (x == i or y == i) and x <= i and y <= i and c.rgs[x] != c.rgs[y]:
                    return False
    return True


cdef void _con_rec(ConCtx *c, int i, int nblocks, list out):
    cdef int b, k
    if i == c.n:
        out.append(tuple([c.first[c.rgs[k]] for k in range(c.n)]))
        return
    for b in range(nblocks + 1):
        c.rgs[i] = b
        if b == nblocks:
            c.first[b] = i
        if _con_ok(c, i):
            _con_rec(c, i + 1, nblocks + (1 if b == nblocks else 0), out)


def congruence_search(action, int m, int n):
    if n == 0:
        return [()]
    cdef ConCtx c
    cdef int i
    c.m = m
    c.n = n
    c.action = <int *> malloc(m * n * sizeof(int))
    c.rgs = <int *> malloc(n * sizeof(int))
    c.first = <int *> malloc(n * sizeof(int))
    out = []
    try:
        for i in range(m * n):
            c.action[i] = action[i]
        c.rgs[0] = 0
        c.first[0] = 0
        _con_rec(&c, 1, 1, out)
        return out
    finally:
        free(c.action)
        free(c.rgs)
        free(c.first)
