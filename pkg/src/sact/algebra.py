"""Finite monoids, finite left S-acts, homomorphisms and universes of acts."""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from functools import cached_property

from . import kernels
from .errors import (
    BadIdentity,
    BadTable,
    BoundExceeded,
    CompatibilityViolation,
    MonoidMismatch,
    NonAssociative,
    NotACongruence,
    UnitViolation,
)

MONOID_ORDER_BOUND = 4
UNIVERSE_SIZE_BOUND = 4
TRIVIAL_MONOID_SIZE_BOUND = 5


@dataclass(frozen=True)
class Monoid:
    size: int
    table: tuple
    identity: int

    def mul(self, s, t):
        return self.table[s][t]

    @property
    def elements(self):
        return range(self.size)

    @property
    def is_trivial(self):
        return self.size == 1

    @cached_property
    def _canon(self):
        return _canonical_monoid(self)

    @cached_property
    def canonical(self) -> "Monoid":
        return self._canon[0]

    @property
    def canonical_order(self) -> tuple:
        """``order[i]`` is the element of this monoid that becomes element i of the canonical one."""
        return self._canon[1]

    @cached_property
    def generators(self) -> tuple:
        """A small generating set, chosen greedily by index."""
        gens = []
        covered = {self.identity}
        while len(covered) < self.size:
            g = min(x for x in self.elements if x not in covered)
            gens.append(g)
            covered = _closure(self, gens)
        return tuple(gens)

    def __repr__(self):
        return f"Monoid(size={self.size}, table={self.table}, identity={self.identity})"


def _closure(monoid, gens):
    seen = {monoid.identity}
    frontier = [monoid.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = monoid.table[g][x]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def validate_monoid(table, identity) -> Monoid:
    n = len(table)
    rows = tuple(tuple(int(v) for v in row) for row in table)
    for row in rows:
        if len(row) != n:
            raise BadTable("multiplication table must be square")
        for v in row:
            if not 0 <= v < n:
                raise BadTable(f"table entry {v} out of range 0..{n - 1}")
    if not 0 <= identity < n:
        raise BadTable(f"identity {identity} out of range")
    for s in range(n):
        if rows[identity][s] != s or rows[s][identity] != s:
            raise BadIdentity(s)
    for s, t, u in itertools.product(range(n), repeat=3):
        if rows[rows[s][t]][u] != rows[s][rows[t][u]]:
            raise NonAssociative(s, t, u)
    return Monoid(n, rows, identity)


def trivial_monoid() -> Monoid:
    return Monoid(1, ((0,),), 0)


def idempotent_monoid() -> Monoid:
    """{1, e} with e.e = e; 1 is element 0 and e is element 1."""
    return Monoid(2, ((0, 1), (1, 1)), 0)


def _canonical_monoid(monoid):
    n = monoid.size
    others = [x for x in range(n) if x != monoid.identity]
    best = best_old = None
    for order in itertools.permutations(others):
        old = (monoid.identity,) + order  # old[new] = old index
        new = {o: i for i, o in enumerate(old)}
        enc = tuple(new[monoid.table[old[i]][old[j]]] for i in range(n) for j in range(n))
        if best is None or enc < best:
            best, best_old = enc, old
    table = tuple(best[i * n:(i + 1) * n] for i in range(n))
    return Monoid(n, table, 0), best_old


def to_canonical_monoid(A: Act) -> Act:
    """The same act viewed over the canonical copy of its monoid."""
    order = A.monoid.canonical_order
    return Act(A.monoid.canonical, A.size, tuple(A.action[s] for s in order))


def enumerate_monoids(order, bound=MONOID_ORDER_BOUND) -> list:
    """One monoid per isomorphism class, identity at 0, sorted by table."""
    if order < 1:
        raise ValueError("order must be positive")
    if order > bound:
        raise BoundExceeded("monoid order", order, bound)
    n = order
    table = [[None] * n for _ in range(n)]
    for x in range(n):
        table[0][x] = x
        table[x][0] = x
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    found = set()

    def consistent():
        for s, t, u in itertools.product(range(n), repeat=3):
            st = table[s][t]
            tu = table[t][u]
            if st is None or tu is None:
                continue
            left = table[st][u]
            right = table[s][tu]
            if left is not None and right is not None and left != right:
                return False
        return True

    def rec(k):
        if k == len(cells):
            m = Monoid(n, tuple(tuple(r) for r in table), 0)
            found.add(_canonical_monoid(m)[0].table)
            return
        i, j = cells[k]
        for v in range(n):
            table[i][j] = v
            if consistent():
                rec(k + 1)
        table[i][j] = None

    rec(0)
    return [Monoid(n, t, 0) for t in sorted(found)]


@dataclass(frozen=True)
class Act:
    monoid: Monoid
    size: int
    action: tuple  # action[s][a] = s . a

    def act(self, s, a):
        return self.action[s][a]

    @property
    def carrier(self):
        return range(self.size)

    @cached_property
    def flat(self) -> tuple:
        return tuple(v for row in self.action for v in row)

    @cached_property
    def key(self) -> tuple:
        return self.action

    def __repr__(self):
        return f"Act(size={self.size}, action={self.action})"


def validate_act(monoid: Monoid, action) -> Act:
    rows = tuple(tuple(int(v) for v in row) for row in action)
    if len(rows) != monoid.size:
        raise BadTable(f"expected {monoid.size} action rows, got {len(rows)}")
    n = len(rows[0]) if rows else 0
    for row in rows:
        if len(row) != n:
            raise BadTable("action rows must have equal length")
        for v in row:
            if not 0 <= v < n:
                raise BadTable(f"action entry {v} out of range 0..{n - 1}")
    for a in range(n):
        if rows[monoid.identity][a] != a:
            raise UnitViolation(a)
    for s, t in itertools.product(monoid.elements, repeat=2):
        st = monoid.table[s][t]
        for a in range(n):
            if rows[s][rows[t][a]] != rows[st][a]:
                raise CompatibilityViolation(s, t, a)
    return Act(monoid, n, rows)


def empty_act(monoid):
    return Act(monoid, 0, tuple(() for _ in monoid.elements))


def zeros(A: Act) -> frozenset:
    return frozenset(a for a in A.carrier if all(A.action[s][a] == a for s in A.monoid.elements))


def is_subact(A: Act, subset) -> bool:
    sub = set(subset)
    return all(A.action[s][b] in sub for b in sub for s in A.monoid.elements)


def subacts(A: Act) -> list:
    """All subacts as sorted tuples, ordered by (size, elements); includes the empty set."""
    out = []
    for k in range(A.size + 1):
        for combo in itertools.combinations(A.carrier, k):
            if is_subact(A, combo):
                out.append(combo)
    return out


def nontrivial_subacts(A: Act) -> list:
    return [B for B in subacts(A) if len(B) >= 2]


def generated_subact(A: Act, a) -> frozenset:
    return frozenset(A.action[s][a] for s in A.monoid.elements)


def restrict(A: Act, subset) -> tuple:
    """The subact on ``subset`` relabelled 0..k-1 in increasing order.

    Returns ``(act, elements)`` where ``elements[i]`` is the original index.
    """
    elems = tuple(sorted(subset))
    pos = {x: i for i, x in enumerate(elems)}
    try:
        rows = tuple(tuple(pos[A.action[s][x]] for x in elems) for s in A.monoid.elements)
    except KeyError:
        from .errors import NotASubact

        raise NotASubact(f"{sorted(subset)} is not closed under the action") from None
    return Act(A.monoid, len(elems), rows), elems


@dataclass(frozen=True)
class Homomorphism:
    source: Act
    target: Act
    map: tuple

    def __call__(self, a):
        return self.map[a]

    @property
    def image(self) -> frozenset:
        return frozenset(self.map)


def _check_same_monoid(A, B):
    if A.monoid != B.monoid:
        raise MonoidMismatch("acts are over different monoids")


def hom_maps(A: Act, B: Act) -> list:
    """Equivariant maps A -> B as tuples, lexicographically ordered."""
    _check_same_monoid(A, B)
    return kernels.hom_search(A.flat, A.monoid.size, A.size, B.flat, B.size)


def homs(A: Act, B: Act) -> list:
    return [Homomorphism(A, B, f) for f in hom_maps(A, B)]


def is_zero_hom(f: Homomorphism) -> bool:
    img = f.image
    if len(img) > 1:
        return False
    if img:
        (z,) = img
        assert z in zeros(f.target), "image of a constant homomorphism must be a zero"
    return True


def is_compatible(A: Act, labels) -> bool:
    """Whether the partition given by class labels is action-compatible."""
    for s in A.monoid.elements:
        row = A.action[s]
        seen = {}
        for a in A.carrier:
            img = labels[row[a]]
            c = labels[a]
            prev = seen.setdefault(c, img)
            if prev != img:
                return False
    return True


def quotient(A: Act, chi) -> tuple:
    """``(A/chi, projection)``; classes are numbered by least element."""
    labels = chi.labels if hasattr(chi, "labels") else tuple(chi)
    if len(labels) != A.size or not is_compatible(A, labels):
        raise NotACongruence("partition is not a congruence on the act")
    reps = sorted(set(labels))
    idx = {r: i for i, r in enumerate(reps)}
    rows = tuple(tuple(idx[labels[A.action[s][r]]] for r in reps) for s in A.monoid.elements)
    Q = Act(A.monoid, len(reps), rows)
    return Q, Homomorphism(A, Q, tuple(idx[labels[a]] for a in A.carrier))


def product(A: Act, B: Act) -> Act:
    """Componentwise action; the pair (a, b) is element a * |B| + b."""
    _check_same_monoid(A, B)
    nb = B.size
    rows = tuple(
        tuple(A.action[s][a] * nb + B.action[s][b] for a in A.carrier for b in B.carrier)
        for s in A.monoid.elements
    )
    return Act(A.monoid, A.size * nb, rows)


def coproduct(A: Act, B: Act) -> Act:
    """Disjoint union; B's elements are shifted by |A|."""
    _check_same_monoid(A, B)
    na = A.size
    rows = tuple(A.action[s] + tuple(na + x for x in B.action[s]) for s in A.monoid.elements)
    return Act(A.monoid, na + B.size, rows)


def _cells(A: Act) -> list:
    n = A.size
    sig = []
    for a in A.carrier:
        fixed = tuple(A.action[s][a] == a for s in A.monoid.elements)
        pre = tuple(sum(1 for b in A.carrier if A.action[s][b] == a) for s in A.monoid.elements)
        orbit = len(generated_subact(A, a))
        sig.append((orbit, fixed, pre))
    ranks = {v: i for i, v in enumerate(sorted(set(sig)))}
    return [ranks[sig[a]] for a in range(n)]


def canonical_labelling(A: Act) -> tuple:
    """``(canonical act, perm)`` where ``perm[a]`` is a's index in the canonical act."""
    m, n = A.monoid.size, A.size
    enc, perm = kernels.canon_search(A.flat, m, n, _cells(A))
    rows = tuple(tuple(enc[s * n:(s + 1) * n]) for s in range(m))
    return Act(A.monoid, n, rows), tuple(perm)


def canonical_form(A: Act) -> Act:
    return canonical_labelling(A)[0]


def permute_act(A: Act, perm) -> Act:
    """The isomorphic copy in which element a is renamed perm[a]."""
    n = A.size
    inv = [0] * n
    for a, p in enumerate(perm):
        inv[p] = a
    rows = tuple(tuple(perm[A.action[s][inv[p]]] for p in range(n)) for s in A.monoid.elements)
    return Act(A.monoid, n, rows)


def _monogenic_candidates(monoid, g, n):
    """Self-maps of an n-set satisfying the relations of the cyclic submonoid of g."""
    powers = [monoid.identity]
    index = {monoid.identity: 0}
    while True:
        nxt = monoid.table[g][powers[-1]]
        if nxt in index:
            loop_to = index[nxt]
            break
        index[nxt] = len(powers)
        powers.append(nxt)
    k = len(powers)  # g^k = g^loop_to
    out = []
    for f in itertools.product(range(n), repeat=n):
        p = tuple(range(n))
        seq = [p]
        for _ in range(k):
            p = tuple(f[x] for x in p)
            seq.append(p)
        if seq[k] == seq[loop_to]:
            out.append(f)
    return out


def enumerate_actions(monoid: Monoid, n: int):
    """Yield every action table of the monoid on {0..n-1} (not up to isomorphism)."""
    ident = tuple(range(n))
    if monoid.is_trivial:
        yield (ident,)
        return
    gens = monoid.generators
    cands = {g: _monogenic_candidates(monoid, g, n) for g in gens}
    assigned = {}

    def close():
        maps = {monoid.identity: ident}
        frontier = [monoid.identity]
        while frontier:
            x = frontier.pop()
            mx = maps[x]
            for g, mg in assigned.items():
                y = monoid.table[g][x]
                my = tuple(mg[v] for v in mx)
                prev = maps.get(y)
                if prev is None:
                    maps[y] = my
                    frontier.append(y)
                elif prev != my:
                    return None
        return maps

    def rec(k):
        if k == len(gens):
            maps = close()
            if maps is not None:
                yield tuple(maps[s] for s in monoid.elements)
            return
        g = gens[k]
        for f in cands[g]:
            assigned[g] = f
            if close() is not None:
                yield from rec(k + 1)
            del assigned[g]

    yield from rec(0)


@dataclass
class Universe:
    """Every act of size <= max_size over the monoid, one per isomorphism class.

    Acts are in canonical form, sorted by (size, action table). The hom cache
    is a memo table; concurrent fills store identical values.
    """

    monoid: Monoid
    max_size: int
    acts: list
    _index: dict = field(default_factory=dict, repr=False)
    _homs: dict = field(default_factory=dict, repr=False)
    _locate: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        self._index = {A.key: i for i, A in enumerate(self.acts)}
        counts = {}
        self._names = []
        for A in self.acts:
            k = counts.get(A.size, 0)
            counts[A.size] = k + 1
            self._names.append(f"a{A.size}_{k}")
        self._by_name = {nm: i for i, nm in enumerate(self._names)}

    def __len__(self):
        return len(self.acts)

    def __iter__(self):
        return iter(self.acts)

    def name(self, i) -> str:
        return self._names[i]

    @property
    def names(self) -> list:
        return list(self._names)

    def index_of_name(self, name) -> int:
        return self._by_name[name]

    def index(self, A: Act) -> int:
        """Index of a canonical-form act."""
        return self._index[A.key]

    def locate(self, A: Act) -> tuple:
        """``(index, perm)`` for an arbitrary act; perm maps A into the universe act."""
        hit = self._locate.get(A.key)
        if hit is None:
            C, perm = canonical_labelling(A)
            try:
                hit = (self._index[C.key], perm)
            except KeyError:
                raise KeyError(f"act of size {A.size} is not in the universe") from None
            self._locate[A.key] = hit
        return hit

    def contains_size(self, n) -> bool:
        return n <= self.max_size

    def homs(self, i, j) -> list:
        hit = self._homs.get((i, j))
        if hit is None:
            hit = hom_maps(self.acts[i], self.acts[j])
            with self._lock:
                self._homs.setdefault((i, j), hit)
        return hit

    def trivial_indices(self) -> list:
        return [i for i, A in enumerate(self.acts) if A.size <= 1]

    def size_breakdown(self) -> dict:
        out = {}
        for A in self.acts:
            out[A.size] = out.get(A.size, 0) + 1
        return out


def size_bound(monoid) -> int:
    return TRIVIAL_MONOID_SIZE_BOUND if monoid.is_trivial else UNIVERSE_SIZE_BOUND


def build_universe(monoid: Monoid, max_size: int, bound=None) -> Universe:
    if max_size < 0:
        raise ValueError("max_size must be non-negative")
    limit = size_bound(monoid) if bound is None else bound
    if max_size > limit:
        raise BoundExceeded("universe max size", max_size, limit)
    keys = set()
    acts = []
    for n in range(max_size + 1):
        for rows in enumerate_actions(monoid, n):
            C = canonical_form(Act(monoid, n, rows))
            if C.key not in keys:
                keys.add(C.key)
                acts.append(C)
    acts.sort(key=lambda A: (A.size, A.action))
    return Universe(monoid, max_size, acts)
