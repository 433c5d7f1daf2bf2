"""Pure-Python implementations of the hot kernels.

Every function here has a twin in ``_kernels.pyx`` with the same signature
and the same output ordering. Actions are passed flattened, row-major:
``action[s * n + a]`` is ``s . a``.
"""


def canon_search(action, m, n, cells):
    """Minimize the relabelled action table over cell-respecting permutations.

    ``cells[a]`` is the rank of element ``a``'s invariant; element ``a`` may
    only be sent to a position inside the block reserved for its rank.
    Returns ``(encoding, perm)`` with ``perm[old] = new``.
    """
    if n == 0:
        return (), ()
    block_start = {}
    counts = {}
    for c in cells:
        counts[c] = counts.get(c, 0) + 1
    pos = 0
    for c in sorted(counts):
        block_start[c] = pos
        pos += counts[c]
    # candidates for each position
    allowed = [None] * n
    for c, start in block_start.items():
        members = [a for a in range(n) if cells[a] == c]
        for p in range(start, start + counts[c]):
            allowed[p] = members

    inv = [-1] * n
    perm = [-1] * n
    best = None
    best_perm = None

    def encode():
        return tuple(perm[action[s * n + inv[p]]] for s in range(m) for p in range(n))

    def rec(p):
        nonlocal best, best_perm
        if p == n:
            enc = encode()
            if best is None or enc < best:
                best = enc
                best_perm = tuple(perm)
            return
        for a in allowed[p]:
            if perm[a] == -1:
                perm[a] = p
                inv[p] = a
                rec(p + 1)
                perm[a] = -1
                inv[p] = -1

    rec(0)
    return best, best_perm


def hom_search(src, m, n_src, tgt, n_tgt):
    """All equivariant maps from the source act to the target act.

    Maps are returned as tuples in lexicographic order.
    """
    if n_src == 0:
        return [()]
    if n_tgt == 0:
        return []
    f = [-1] * n_src
    out = []

    def rec(i):
        while i < n_src and f[i] != -1:
            i += 1
        if i == n_src:
            out.append(tuple(f))
            return
        for b in range(n_tgt):
            trail = []
            ok = True
            for s in range(m):
                x = src[s * n_src + i]
                y = tgt[s * n_tgt + b]
                if f[x] == -1:
                    f[x] = y
                    trail.append(x)
                elif f[x] != y:
                    ok = False
                    break
            if ok:
                rec(i + 1)
            for x in trail:
                f[x] = -1

    rec(0)
    return out


def congruence_search(action, m, n):
    """All congruences of the act, as least-representative label tuples.

    Set partitions are generated as restricted growth strings and pruned as
    soon as an assigned pair of related elements has assigned, unrelated
    images. The output is in restricted-growth-string order.
    """
    if n == 0:
        return [()]
    rgs = [0] * n
    first = []  # first[b] = least element of block b
    out = []

    def compatible_upto(i):
        # pairs (j, i) with j < i in the same block
        bi = rgs[i]
        for j in range(i):
            if rgs[j] != bi:
                continue
            for s in range(m):
                x = action[s * n + i]
                y = action[s * n + j]
                if x <= i and y <= i and rgs[x] != rgs[y]:
                    return False
        # pairs whose images just became fully assigned
        for j in range(i + 1):
            for k in range(j):
                if rgs[j] != rgs[k]:
                    continue
                for s in range(m):
                    x = action[s * n + j]
                    y = action[s * n + k]
                    if (x == i or y == i) and x <= i and y <= i and rgs[x] != rgs[y]:
                        return False
        return True

    def rec(i, nblocks):
        if i == n:
            out.append(tuple(first[b] for b in rgs))
            return
        for b in range(nblocks + 1):
            rgs[i] = b
            if b == nblocks:
                first.append(i)
            if compatible_upto(i):
                rec(i + 1, nblocks + (b == nblocks))
            if b == nblocks:
                first.pop()

    rgs[0] = 0
    first.append(0)
    rec(1, 1)
    return out
