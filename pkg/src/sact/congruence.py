"""Congruences on finite acts, the lattice Con(A), and the Rees calculus."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import kernels
from .algebra import Act, is_compatible, is_subact, restrict
from .errors import ActMismatch, BoundExceeded, InvalidSystem, NotAPartition, NotASubact

CONGRUENCE_SIZE_BOUND = 6


def _normalize(labels) -> tuple:
    """Relabel so every element maps to the least element of its class."""
    first = {}
    return tuple(first.setdefault(c, a) for a, c in enumerate(labels))


@dataclass(frozen=True)
class Congruence:
    """A partition of an act's carrier stored as least-representative labels."""

    labels: tuple
    act: Act = field(compare=False, repr=False, hash=False, default=None)

    @classmethod
    def from_blocks(cls, act, blocks):
        labels = [None] * act.size
        for block in blocks:
            for a in block:
                if not 0 <= a < act.size or labels[a] is not None:
                    raise NotAPartition(f"bad or repeated element {a}")
                labels[a] = min(block)
        if any(v is None for v in labels):
            raise NotAPartition("blocks do not cover the carrier")
        return cls(tuple(labels), act)

    @property
    def size(self):
        return len(self.labels)

    @cached_property
    def blocks(self) -> tuple:
        out = {}
        for a, c in enumerate(self.labels):
            out.setdefault(c, []).append(a)
        return tuple(tuple(b) for _, b in sorted(out.items()))

    def related(self, a, b) -> bool:
        return self.labels[a] == self.labels[b]

    def pairs(self):
        for block in self.blocks:
            for a in block:
                for b in block:
                    yield a, b

    @property
    def is_diagonal(self):
        return all(c == a for a, c in enumerate(self.labels))

    @property
    def is_total(self):
        return all(c == 0 for c in self.labels)

    def __le__(self, other):
        return leq(self, other)

    def __str__(self):
        return format_partition(self)


def format_partition(chi) -> str:
    blocks = chi.blocks if isinstance(chi, Congruence) else chi
    return "partition {" + " | ".join(" ".join(str(a) for a in b) for b in blocks) + "}"


def parse_partition(text, size=None) -> tuple:
    """Parse ``partition {0 1 | 2}`` into a tuple of blocks."""
    s = text.strip()
    if not (s.startswith("partition") and s.endswith("}")):
        raise ValueError(f"not a partition literal: {text!r}")
    inner = s[len("partition"):].strip()
    if not inner.startswith("{"):
        raise ValueError(f"not a partition literal: {text!r}")
    inner = inner[1:-1].strip()
    if not inner:
        return ()
    blocks = []
    for part in inner.split("|"):
        items = part.split()
        if not items:
            raise ValueError(f"empty block in {text!r}")
        blocks.append(tuple(int(x) for x in items))
    seen = sorted(a for b in blocks for a in b)
    n = len(seen) if size is None else size
    if seen != list(range(n)):
        raise NotAPartition(f"blocks do not partition 0..{n - 1}")
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def diagonal(A: Act) -> Congruence:
    return Congruence(tuple(range(A.size)), A)


def total(A: Act) -> Congruence:
    return Congruence(tuple(0 for _ in range(A.size)), A)


def _labels_of(A, partition) -> tuple:
    if isinstance(partition, Congruence):
        labels = partition.labels
    else:
        partition = list(partition)
        if partition and isinstance(partition[0], (tuple, list, frozenset, set)):
            return Congruence.from_blocks(A, partition).labels
        labels = tuple(partition)
    if len(labels) != A.size:
        raise NotAPartition("labels do not cover the carrier")
    return _normalize(labels)


def is_congruence(A: Act, partition) -> bool:
    return is_compatible(A, _labels_of(A, partition))


def make_congruence(A: Act, partition) -> Congruence:
    labels = _labels_of(A, partition)
    if not is_compatible(A, labels):
        from .errors import NotACongruence

        raise NotACongruence("partition is not action-compatible")
    return Congruence(labels, A)


def leq(chi1: Congruence, chi2: Congruence) -> bool:
    """Containment of relations: every chi1-class lies inside a chi2-class."""
    l1, l2 = chi1.labels, chi2.labels
    if len(l1) != len(l2):
        raise ActMismatch("congruences on different acts")
    return all(l2[a] == l2[c] for a, c in enumerate(l1))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if y < x:
            x, y = y, x
        self.parent[y] = x
        return True

    def labels(self):
        return _normalize([self.find(x) for x in range(len(self.parent))])


def _same_act(chi1, chi2):
    if chi1.size != chi2.size or (
        chi1.act is not None and chi2.act is not None and chi1.act != chi2.act
    ):
        raise ActMismatch("congruences on different acts")
    return chi1.act if chi1.act is not None else chi2.act


def meet(chi1: Congruence, chi2: Congruence) -> Congruence:
    A = _same_act(chi1, chi2)
    return Congruence(_normalize(list(zip(chi1.labels, chi2.labels))), A)


def join(chi1: Congruence, chi2: Congruence) -> Congruence:
    A = _same_act(chi1, chi2)
    uf = _UnionFind(chi1.size)
    for a in range(chi1.size):
        uf.union(a, chi1.labels[a])
        uf.union(a, chi2.labels[a])
    out = Congruence(uf.labels(), A)
    if A is not None:
        assert is_compatible(A, out.labels), "join of congruences lost compatibility"
    return out


def meet_all(A: Act, congruences) -> Congruence:
    out = total(A)
    for chi in congruences:
        out = meet(out, chi)
    return out


def join_all(A: Act, congruences) -> Congruence:
    out = diagonal(A)
    for chi in congruences:
        out = join(out, chi)
    return out


def principal_congruence(A: Act, a, b) -> Congruence:
    uf = _UnionFind(A.size)
    todo = [(a, b)]
    while todo:
        x, y = todo.pop()
        if uf.union(x, y):
            for s in A.monoid.elements:
                todo.append((A.action[s][x], A.action[s][y]))
    # equivalence closure of an action-closed relation is compatible
    return Congruence(uf.labels(), A)


@dataclass
class CongruenceLattice:
    act: Act
    congruences: list
    order: list  # order[i] = set of j with congruences[i] <= congruences[j]

    def __len__(self):
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __contains__(self, chi):
        return chi in self._set

    @cached_property
    def _set(self):
        return frozenset(self.congruences)

    @cached_property
    def _pos(self):
        return {c: i for i, c in enumerate(self.congruences)}

    def index(self, chi) -> int:
        return self._pos[chi]

    def leq(self, i, j) -> bool:
        return j in self.order[i]


def congruence_labels(A: Act) -> list:
    """All congruences as label tuples, in restricted-growth-string order."""
    return kernels.congruence_search(A.flat, A.monoid.size, A.size)


def enumerate_congruences(A: Act, bound=CONGRUENCE_SIZE_BOUND, self_check=True) -> CongruenceLattice:
    if A.size > bound:
        raise BoundExceeded("act size for congruence enumeration", A.size, bound)
    cons = [Congruence(lab, A) for lab in congruence_labels(A)]
    order = [{j for j, d in enumerate(cons) if leq(c, d)} for c in cons]
    lat = CongruenceLattice(A, cons, order)
    if self_check:
        assert diagonal(A) in lat and total(A) in lat
        members = lat._set
        for c in cons:
            for d in cons:
                assert meet(c, d) in members and join(c, d) in members
    return lat


@dataclass(frozen=True)
class ReesSystem:
    """Pairwise disjoint non-trivial subacts, stored as sorted tuples in sorted order."""

    members: tuple
    act: Act = field(compare=False, repr=False, hash=False, default=None)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def make_system(A: Act, members) -> ReesSystem:
    mem = tuple(sorted(tuple(sorted(set(B))) for B in members))
    seen = set()
    for B in mem:
        if len(B) < 2:
            raise InvalidSystem(f"member {list(B)} is trivial")
        if not is_subact(A, B):
            raise InvalidSystem(f"member {list(B)} is not a subact")
        if seen & set(B):
            raise InvalidSystem(f"member {list(B)} overlaps another member")
        seen |= set(B)
    return ReesSystem(mem, A)


def rees_of_system(A: Act, system) -> Congruence:
    members = system.members if isinstance(system, ReesSystem) else system
    sys_ = make_system(A, members)
    labels = list(range(A.size))
    for B in sys_.members:
        for x in B:
            labels[x] = B[0]
    return Congruence(tuple(labels), A)


def system_of(A: Act, chi: Congruence) -> ReesSystem:
    members = tuple(b for b in chi.blocks if len(b) >= 2 and is_subact(A, b))
    return ReesSystem(members, A)


def is_rees(A: Act, chi: Congruence) -> bool:
    return all(len(b) == 1 or is_subact(A, b) for b in chi.blocks)


def rees_part(A: Act, chi: Congruence) -> Congruence:
    return rees_of_system(A, system_of(A, chi))


def rees_congruences(A: Act, lattice=None) -> list:
    lat = lattice if lattice is not None else enumerate_congruences(A, self_check=False)
    return [chi for chi in lat if is_rees(A, chi)]


def restrict_congruence(A: Act, chi: Congruence, subset) -> tuple:
    """``chi`` restricted to a subact, as a congruence on the relabelled subact."""
    B, elems = restrict(A, subset)
    return Congruence(_normalize([chi.labels[x] for x in elems]), B), B


def extend_congruence(A: Act, subset, chi_B: Congruence) -> Congruence:
    """The smallest congruence of A that restricts to ``chi_B`` on the subact.

    ``chi_B`` is indexed by the subact's elements in increasing order.
    """
    if not is_subact(A, subset):
        raise NotASubact(f"{sorted(subset)} is not a subact")
    elems = sorted(set(subset))
    if chi_B.size != len(elems):
        raise ActMismatch("congruence size does not match the subact")
    labels = list(range(A.size))
    for i, x in enumerate(elems):
        labels[x] = elems[chi_B.labels[i]]
    return Congruence(_normalize(labels), A)
