"""Radical assignments over a universe of acts and their axiom checkers.

All checks are universe-relative: homomorphisms, subacts, quotients and
products are only inspected between acts of the universe.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .algebra import Universe, nontrivial_subacts, product, quotient, restrict
from .congruence import (
    Congruence,
    _normalize,
    diagonal,
    enumerate_congruences,
    format_partition,
    is_rees,
    join,
    leq,
    meet,
    system_of,
    total,
)
from .errors import BoundExceeded, EmptyCandidateSet, NotHoehnke

RADICAL_SEARCH_BOUND = 10**7

ASSUMPTIONS = (
    "universe-relative: homomorphisms, subacts, quotients and products are taken inside the universe",
    "closed under congruence extensions: A/chi in S and every member of Sigma_chi in S imply A in S",
    "inductive property: checked on finite chains of subacts inside single universe acts",
)


@dataclass
class AxiomReport:
    name: str
    anchor: str = ""
    witnesses: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    parts: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.witnesses or any(p.verdict == "fail" for p in self.parts.values()):
            return "fail"
        return "pass"

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    @property
    def has_skips(self) -> bool:
        return bool(self.skipped) or any(p.has_skips for p in self.parts.values())

    def fail(self, **witness):
        self.witnesses.append(witness)

    def part(self, key, anchor="") -> "AxiomReport":
        rep = AxiomReport(f"{self.name}.{key}", anchor)
        self.parts[key] = rep
        return rep

    def __bool__(self):
        return self.ok


class _Tables:
    """Per-universe precomputation shared by every checker."""

    def __init__(self, u: Universe):
        self.u = u
        self.trivial = frozenset(u.trivial_indices())
        self.cons = []
        self.cons_index = []
        self.quot = []      # quot[i][k] = universe index of U_i / cons[i][k]
        self.rees = []      # rees[i] = indices k of Rees congruences
        self.systems = []   # systems[i][k] = members of Sigma_chi as universe indices
        self.system_sets = []
        self.subs = []      # subs[i] = list of (subset, universe index, perm) for non-trivial subacts
        for i, A in enumerate(u.acts):
            cons = list(enumerate_congruences(A, bound=max(u.max_size, 1), self_check=False))
            self.cons.append(cons)
            self.cons_index.append({c: k for k, c in enumerate(cons)})
            self.quot.append([u.locate(quotient(A, c)[0])[0] for c in cons])
            self.rees.append([k for k, c in enumerate(cons) if is_rees(A, c)])
            sysmem = []
            syssets = []
            for c in cons:
                members = system_of(A, c).members
                syssets.append(members)
                sysmem.append(tuple(u.locate(restrict(A, B)[0])[0] for B in members))
            self.systems.append(sysmem)
            self.system_sets.append(syssets)
            subs = []
            for B in nontrivial_subacts(A):
                j, perm = u.locate(restrict(A, B)[0])
                subs.append((B, j, perm))
            self.subs.append(subs)

        self.rees_sets = [frozenset(r) for r in self.rees]

    def nontrivial(self):
        return [i for i in range(len(self.u)) if i not in self.trivial]


def tables(u: Universe) -> _Tables:
    t = getattr(u, "_tables", None)
    if t is None:
        t = _Tables(u)
        u._tables = t
    return t


@dataclass(frozen=True)
class ActClass:
    """A class of universe acts, stored as universe indices; always holds the trivial acts."""

    members: frozenset
    universe: Universe = field(compare=False, repr=False, hash=False, default=None)
    label: str = field(compare=False, default="")

    def __contains__(self, i):
        return i in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def contains_act(self, A) -> bool:
        return self.universe.locate(A)[0] in self.members

    def names(self) -> list:
        return [self.universe.name(i) for i in sorted(self.members)]

    def __le__(self, other):
        return self.members <= other.members


def make_class(u: Universe, indices, label="") -> ActClass:
    return ActClass(frozenset(indices) | frozenset(u.trivial_indices()), u, label)


def trivial_class(u):
    return make_class(u, (), "trivial")


def all_class(u):
    return make_class(u, range(len(u)), "all")


def all_classes(u: Universe) -> list:
    """Every class of the universe (each contains the trivial acts), in bitmask order."""
    nt = tables(u).nontrivial()
    out = []
    for mask in range(1 << len(nt)):
        out.append(make_class(u, [x for b, x in enumerate(nt) if mask >> b & 1], f"mask{mask}"))
    return out


@dataclass(frozen=True)
class RadicalAssignment:
    """One congruence per universe act, indexed like ``universe.acts``."""

    values: tuple
    universe: Universe = field(compare=False, repr=False, hash=False, default=None)
    name: str = field(compare=False, default="")

    def __getitem__(self, i) -> Congruence:
        return self.values[i]

    def value_on(self, A) -> Congruence:
        """The value on an arbitrary act, transported along its canonical labelling."""
        i, perm = self.universe.locate(A)
        lab = self.values[i].labels
        return Congruence(_normalize([lab[perm[a]] for a in range(A.size)]), A)

    def __le__(self, other):
        return radical_leq(self, other)

    def describe(self) -> list:
        return [(self.universe.name(i), format_partition(v)) for i, v in enumerate(self.values)]


def make_radical(u: Universe, values, name="") -> RadicalAssignment:
    return RadicalAssignment(tuple(values), u, name)


def delta_radical(u):
    return make_radical(u, [diagonal(A) for A in u.acts], "delta")


def nabla_radical(u):
    return make_radical(u, [total(A) for A in u.acts], "nabla")


def radical_leq(r1, r2) -> bool:
    return all(leq(a, b) for a, b in zip(r1.values, r2.values))


def pointwise_join(u, radicals) -> RadicalAssignment:
    vals = [diagonal(A) for A in u.acts]
    for r in radicals:
        vals = [join(a, b) for a, b in zip(vals, r.values)]
    return make_radical(u, vals)


def pointwise_meet(u, radicals) -> RadicalAssignment:
    vals = [total(A) for A in u.acts]
    for r in radicals:
        vals = [meet(a, b) for a, b in zip(vals, r.values)]
    return make_radical(u, vals)


def _pull(values, i, perm, size):
    lab = values[i].labels
    return _normalize([lab[perm[a]] for a in range(size)])


def _restricted(chi_labels, B):
    return _normalize([chi_labels[x] for x in B])


# --- local axiom tests shared by the checkers and the pruned search ---------


def _functorial(lab_a, lab_b, f) -> bool:
    return all(lab_b[f[a]] == lab_b[f[c]] for a, c in enumerate(lab_a))


def _functoriality_witness(t, vals, i, j):
    la, lb = vals[i].labels, vals[j].labels
    for f in t.u.homs(i, j):
        for a, c in enumerate(la):
            if lb[f[a]] != lb[f[c]]:
                return f, (c, a)
    return None


def _quotient_ok(t, vals, i, k) -> bool:
    q = t.quot[i][k]
    if q == i:
        return t.cons[i][k].is_diagonal
    return vals[q].is_diagonal


def _hereditary_witness(t, vals, i):
    lab = vals[i].labels
    for B, j, perm in t.subs[i]:
        if _restricted(lab, B) != _pull(vals, j, perm, len(B)):
            return B
    return None


def _ka_witness(t, vals, i, k):
    """First failing KA property of value cons[i][k] given smaller values, or None."""
    if k not in t.rees_sets[i]:
        return "i", None
    for j in t.systems[i][k]:
        if j != i and not vals[j].is_total:
            return "ii", j
    members = t.system_sets[i][k]
    for B, j, _ in t.subs[i]:
        if vals[j].is_total and not any(set(B) <= set(C) for C in members):
            return "iii", B
    return None


# --- classes from radicals ---------------------------------------------------


def radical_class(u, r) -> ActClass:
    return make_class(u, [i for i, v in enumerate(r.values) if v.is_total], "R_r")


def semisimple_class(u, r) -> ActClass:
    return make_class(u, [i for i, v in enumerate(r.values) if v.is_diagonal], "S_r")


# --- checkers ----------------------------------------------------------------


def check_hoehnke(u, r) -> AxiomReport:
    t = tables(u)
    rep = AxiomReport("hoehnke", "hoehnke radical")
    rep.notes.append(ASSUMPTIONS[0])
    func = rep.part("functorial", "hoehnke: functorial")
    idem = rep.part("quotient", "hoehnke: quotient is radical-free")
    vals = r.values
    n = len(u)
    for i in range(n):
        for j in range(n):
            w = _functoriality_witness(t, vals, i, j)
            if w is not None:
                f, pair = w
                func.fail(source=u.name(i), target=u.name(j), hom=list(f), pair=list(pair))
    for i, A in enumerate(u.acts):
        Q, _ = quotient(A, vals[i])
        if not r.value_on(Q).is_diagonal:
            idem.fail(act=u.name(i), value=format_partition(vals[i]),
                      quotient_value=format_partition(r.value_on(Q)))
    return rep


def check_hereditary(u, r) -> AxiomReport:
    t = tables(u)
    rep = AxiomReport("hereditary", "hereditary radical")
    rep.notes.append(ASSUMPTIONS[0])
    for i, A in enumerate(u.acts):
        lab = r.values[i].labels
        for B, j, perm in t.subs[i]:
            lhs = _pull(r.values, j, perm, len(B))
            rhs = _restricted(lab, B)
            if lhs != rhs:
                rep.fail(act=u.name(i), subact=list(B),
                         value_on_subact=format_partition(Congruence(lhs)),
                         restricted_value=format_partition(Congruence(rhs)))
    return rep


def check_ka(u, r) -> AxiomReport:
    rep = AxiomReport("kurosh-amitsur", "kurosh-amitsur radical")
    rep.notes.append(ASSUMPTIONS[0])
    p1 = rep.part("i", "kurosh-amitsur (i)")
    p2 = rep.part("ii", "kurosh-amitsur (ii)")
    p3 = rep.part("iii", "kurosh-amitsur (iii)")
    R = radical_class(u, r)
    for i, A in enumerate(u.acts):
        chi = r.values[i]
        if not is_rees(A, chi):
            p1.fail(act=u.name(i), value=format_partition(chi))
        for B in system_of(A, chi):
            if not r.value_on(restrict(A, B)[0]).is_total:
                p2.fail(act=u.name(i), member=list(B))
        members = system_of(A, chi).members
        for system in ka_systems(u, i, R):
            for B in system:
                if not any(set(B) <= set(C) for C in members):
                    p3.fail(act=u.name(i), system=[list(x) for x in system], member=list(B))
    return rep


def ka_systems(u, i, R) -> list:
    """Every R-system on universe act i: disjoint non-trivial subacts, all in R."""
    t = tables(u)
    cands = [B for B, j, _ in t.subs[i] if j in R]
    out = []

    def rec(start, chosen, used):
        out.append(tuple(chosen))
        for k in range(start, len(cands)):
            B = cands[k]
            if used.isdisjoint(B):
                chosen.append(B)
                rec(k + 1, chosen, used | set(B))
                chosen.pop()

    rec(0, [], frozenset())
    return out


def radical_from_semisimple(u, S: ActClass) -> RadicalAssignment:
    t = tables(u)
    vals = []
    for i, A in enumerate(u.acts):
        cands = [c for k, c in enumerate(t.cons[i]) if t.quot[i][k] in S]
        if not cands:
            raise EmptyCandidateSet(f"no congruence on {u.name(i)} has its quotient in the class")
        out = total(A)
        for c in cands:
            out = meet(out, c)
        vals.append(out)
    return make_radical(u, vals, f"r_S({S.label})" if S.label else "r_S")


def radical_from_radical_class(u, R: ActClass) -> RadicalAssignment:
    t = tables(u)
    vals = []
    for i, A in enumerate(u.acts):
        out = diagonal(A)
        for k in t.rees[i]:
            if all(j in R for j in t.systems[i][k]):
                out = join(out, t.cons[i][k])
        vals.append(out)
    return make_radical(u, vals, f"r_R({R.label})" if R.label else "r_R")


def _quotients_in(t, i, C):
    return [k for k in range(len(t.cons[i])) if t.quot[i][k] not in C]


def check_pair_conditions(u, R: ActClass, S: ActClass) -> AxiomReport:
    t = tables(u)
    rep = AxiomReport("pair", "pair conditions")
    rep.notes.append(ASSUMPTIONS[0])
    c1 = rep.part("1", "pair conditions (1)")
    c2 = rep.part("2", "pair conditions (2)")
    c3 = rep.part("3", "pair conditions (3)")
    c4 = rep.part("4", "pair conditions (4)")
    for i in sorted(R.members & S.members):
        if i not in t.trivial:
            c1.fail(act=u.name(i))
    for i in R:
        for k in _quotients_in(t, i, R):
            c2.fail(act=u.name(i), congruence=format_partition(t.cons[i][k]),
                    image=u.name(t.quot[i][k]))
    for i in S:
        for B, j, _ in t.subs[i]:
            if j not in S:
                c3.fail(act=u.name(i), subact=list(B))
    chosen = {}
    for i in range(len(u)):
        found = None
        for k in t.rees[i]:
            if all(j in R for j in t.systems[i][k]) and t.quot[i][k] in S:
                found = k
                break
        if found is None:
            c4.fail(act=u.name(i))
        else:
            chosen[u.name(i)] = format_partition(t.cons[i][found])
    c4.data["systems"] = chosen
    return rep


def check_semisimple_closure(u, S: ActClass) -> AxiomReport:
    t = tables(u)
    rep = AxiomReport("semisimple-closure", "semisimple class closure")
    rep.notes.extend(ASSUMPTIONS[:2])
    sub = rep.part("subacts", "semisimple class: subacts")
    prod = rep.part("products", "semisimple class: products")
    ext = rep.part("congruence-extensions", "semisimple class: congruence extensions")
    for i in S:
        for B, j, _ in t.subs[i]:
            if j not in S:
                sub.fail(act=u.name(i), subact=list(B))
    members = sorted(S.members)
    for a, b in itertools.combinations_with_replacement(members, 2):
        A, B = u.acts[a], u.acts[b]
        if A.size * B.size > u.max_size:
            prod.skipped.append({"pair": [u.name(a), u.name(b)], "size": A.size * B.size,
                                 "bound": u.max_size})
            continue
        j = u.locate(product(A, B))[0]
        if j not in S:
            prod.fail(left=u.name(a), right=u.name(b), product=u.name(j))
    for i in range(len(u)):
        if i in S:
            continue
        for k, c in enumerate(t.cons[i]):
            if t.quot[i][k] in S and all(j in S for j in t.systems[i][k]):
                ext.fail(act=u.name(i), congruence=format_partition(c))
    return rep


def check_radical_closure(u, R: ActClass) -> AxiomReport:
    t = tables(u)
    rep = AxiomReport("radical-closure", "radical class closure")
    rep.notes.extend([ASSUMPTIONS[0], ASSUMPTIONS[2]])
    hom = rep.part("homomorphic", "radical class: homomorphic images")
    ind = rep.part("inductive", "radical class: inductive (finite chains)")
    ext = rep.part("rees-extensions", "radical class: closed under Rees extensions")
    for i in R:
        for k in _quotients_in(t, i, R):
            hom.fail(act=u.name(i), congruence=format_partition(t.cons[i][k]),
                     image=u.name(t.quot[i][k]))
    for i in range(len(u)):
        A = u.acts[i]
        for chain in _subact_chains(t, i, R):
            union = set().union(*chain)
            if u.locate(restrict(A, union)[0])[0] not in R:
                ind.fail(act=u.name(i), chain=[list(c) for c in chain])
    for i in range(len(u)):
        if i in R:
            continue
        for k in t.rees[i]:
            if t.quot[i][k] in R and all(j in R for j in t.systems[i][k]):
                ext.fail(act=u.name(i), congruence=format_partition(t.cons[i][k]))
    return rep


def _subact_chains(t, i, R):
    """Maximal strictly ascending chains of non-trivial R-subacts of act i."""
    subs = [frozenset(B) for B, j, _ in t.subs[i] if j in R]
    out = []

    def rec(chain):
        ext = [B for B in subs if chain[-1] < B]
        if not ext:
            out.append(chain)
            return
        for B in ext:
            rec(chain + [B])

    for B in subs:
        if not any(C < B for C in subs):
            rec([B])
    return out


def reflect(u, r_h) -> RadicalAssignment:
    rep = check_hoehnke(u, r_h)
    if not rep.ok:
        raise NotHoehnke(f"{r_h.name or 'assignment'} is not a Hoehnke radical")
    out = radical_from_radical_class(u, radical_class(u, r_h))
    return make_radical(u, out.values, f"{r_h.name}_k" if r_h.name else "r_k")


def verify_reflection(u, r_h, ka_list, hoehnke_list=None) -> AxiomReport:
    rep = AxiomReport("reflection", "reflection")
    rep.notes.append(ASSUMPTIONS[0])
    if hoehnke_list is None:
        hoehnke_list = enumerate_radicals(u, "hoehnke")
    r_k = reflect(u, r_h)
    p1 = rep.part("join", "reflection: join of KA radicals below")
    p2 = rep.part("meet", "reflection: meet of Hoehnke radicals with same radical class")
    adj = rep.part("adjunction", "reflection: adjunction")
    below = [q for q in ka_list if radical_leq(q, r_h)]
    j = pointwise_join(u, below)
    if j.values != r_k.values:
        p1.fail(radical=r_h.name, expected=_desc(r_k), join=_desc(j))
    if r_k.values not in {q.values for q in ka_list}:
        p1.fail(radical=r_h.name, reason="reflection is not among the enumerated KA radicals")
    Rh = radical_class(u, r_h).members
    same = [r for r in hoehnke_list if radical_class(u, r).members == Rh]
    m = pointwise_meet(u, same)
    if m.values != r_k.values:
        p2.fail(radical=r_h.name, expected=_desc(r_k), meet=_desc(m))
    for q in ka_list:
        if radical_leq(q, r_h) != radical_leq(q, r_k):
            adj.fail(radical=r_h.name, ka=_desc(q))
    rep.data["reflection"] = _desc(r_k)
    return rep


def _desc(r):
    return [f"{nm} : {p}" for nm, p in r.describe()]


def check_ka_redundancy(u, r) -> AxiomReport:
    rep = AxiomReport("ka-redundancy", "ka redundancy")
    ka = check_ka(u, r)
    if ka.parts["i"].ok and ka.parts["ii"].ok:
        if not ka.parts["iii"].ok:
            rep.fail(reason="(i) and (ii) hold but (iii) fails", witnesses=ka.parts["iii"].witnesses)
        if reflect(u, r).values != r.values:
            rep.fail(reason="(i) and (ii) hold but r is not fixed by the reflection")
    else:
        rep.notes.append("premise (i)+(ii) does not hold; nothing to check")
    return rep


# --- enumeration ---------------------------------------------------------------

FILTERS = ("hoehnke", "hereditary", "ka")


def search_space(u) -> int:
    t = tables(u)
    return math.prod(len(c) for c in t.cons)


def enumerate_radicals(u, filter="hoehnke", bound=RADICAL_SEARCH_BOUND) -> list:
    """All assignments passing the filter, by depth-first search in act order.

    Acts are assigned smallest first, so quotients and proper subacts of the
    act being assigned already carry values; functoriality is checked along
    homomorphisms to and from every assigned act as soon as both ends are set.
    """
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}")
    space = search_space(u)
    if space > bound:
        raise BoundExceeded("radical search space", space, bound)
    t = tables(u)
    n = len(u)
    vals = [None] * n
    out = []

    def ok(i, k):
        chi = t.cons[i][k]
        vals[i] = chi
        if not _quotient_ok(t, vals, i, k):
            return False
        lab = chi.labels
        for j in range(i + 1):
            lj = vals[j].labels
            for f in t.u.homs(j, i):
                if not _functorial(lj, lab, f):
                    return False
            if j != i:
                for f in t.u.homs(i, j):
                    if not _functorial(lab, lj, f):
                        return False
        if filter == "hereditary" and _hereditary_witness(t, vals, i) is not None:
            return False
        if filter == "ka" and _ka_witness(t, vals, i, k) is not None:
            return False
        return True

    def rec(i):
        if i == n:
            out.append(make_radical(u, vals))
            return
        for k in range(len(t.cons[i])):
            if ok(i, k):
                rec(i + 1)
        vals[i] = None

    rec(0)
    for idx, r in enumerate(out):
        out[idx] = make_radical(u, r.values, f"{filter}{idx}")
    return out
