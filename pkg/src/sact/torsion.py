"""Torsion pairs over a universe and their correspondence with KA radicals."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import coproduct, hom_maps, quotient, restrict
from .congruence import (
    Congruence,
    diagonal,
    enumerate_congruences,
    format_partition,
    is_rees,
    join,
    system_of,
)
from .errors import NotATorsionTheory, NotKA
from .radical import (
    ASSUMPTIONS,
    ActClass,
    AxiomReport,
    all_classes,
    check_ka,
    make_class,
    make_radical,
    radical_class,
    semisimple_class,
    tables,
)

HOM_CONVENTION = (
    "hom condition: every homomorphism has at most one image point; "
    "a non-empty hom-set from a non-empty act into a zero-free act fails"
)


def hom_condition(A, B) -> bool:
    """Hom(A, B) is empty or consists of zero homomorphisms."""
    return all(len(set(f)) <= 1 for f in hom_maps(A, B))


def _hc(u):
    t = tables(u)
    hc = getattr(t, "hom_condition", None)
    if hc is None:
        n = len(u)
        hc = [[all(len(set(f)) <= 1 for f in u.homs(i, j)) for j in range(n)] for i in range(n)]
        t.hom_condition = hc
    return hc


def right_orthogonal(u, T: ActClass) -> ActClass:
    hc = _hc(u)
    return make_class(u, [j for j in range(len(u)) if all(hc[i][j] for i in T)], "F")


def left_orthogonal(u, F: ActClass) -> ActClass:
    hc = _hc(u)
    return make_class(u, [i for i in range(len(u)) if all(hc[i][j] for j in F)], "T")


@dataclass(frozen=True)
class TorsionPair:
    torsion: ActClass
    torsion_free: ActClass
    universe: object = field(compare=False, repr=False, hash=False, default=None)
    name: str = field(compare=False, default="")


def make_pair(u, T, F, name="") -> TorsionPair:
    return TorsionPair(T, F, u, name)


def check_torsion_theory(u, tau: TorsionPair) -> AxiomReport:
    hc = _hc(u)
    T, F = tau.torsion, tau.torsion_free
    rep = AxiomReport("torsion", "torsion theory")
    rep.notes.extend([ASSUMPTIONS[0], HOM_CONVENTION])
    c1 = rep.part("1", "torsion theory (1)")
    c2 = rep.part("2", "torsion theory (2)")
    c3 = rep.part("3", "torsion theory (3)")
    for i in T:
        for j in F:
            if not hc[i][j]:
                f = next(f for f in u.homs(i, j) if len(set(f)) > 1)
                c1.fail(torsion=u.name(i), torsion_free=u.name(j), hom=list(f))
    for i in left_orthogonal(u, F):
        if i not in T:
            c2.fail(act=u.name(i))
    for j in right_orthogonal(u, T):
        if j not in F:
            c3.fail(act=u.name(j))
    for i in sorted(T.members & F.members):
        if u.acts[i].size > 1:
            rep.fail(reason="torsion and torsion-free classes share a non-trivial act", act=u.name(i))
    return rep


def enumerate_torsion_pairs(u) -> list:
    """Every torsion pair, found by closing each class under right-then-left orthogonality."""
    seen = {}
    for C in all_classes(u):
        F = right_orthogonal(u, C)
        T = left_orthogonal(u, F)
        seen.setdefault((T.members, F.members), (T, F))
    pairs = []
    for idx, key in enumerate(sorted(seen, key=lambda k: (sorted(k[0]), sorted(k[1])))):
        T, F = seen[key]
        pairs.append(make_pair(u, T, F, f"tau{idx}"))
    return pairs


def _rees_with_members(u, A):
    """(congruence, member universe indices) for every Rees congruence on A."""
    try:
        i, perm = u.locate(A)
    except KeyError:
        i = None
    if i is not None and u.acts[i] == A:
        t = tables(u)
        return [(t.cons[i][k], t.systems[i][k]) for k in t.rees[i]]
    out = []
    for chi in enumerate_congruences(A, self_check=False):
        if is_rees(A, chi):
            members = system_of(A, chi).members
            out.append((chi, tuple(u.locate(restrict(A, B)[0])[0] for B in members)))
    return out


def t_congruence(u, T: ActClass, A, report=None) -> Congruence:
    """Join of the Rees congruences on A whose systems lie in T.

    Whether that join is itself Rees with every non-singleton class in T is
    re-derived here; a failure is appended to ``report`` when one is given.
    """
    out = diagonal(A)
    for chi, members in _rees_with_members(u, A):
        if all(j in T for j in members):
            out = join(out, chi)
    if report is not None:
        if not is_rees(A, out):
            report.fail(reason="join is not a Rees congruence", value=format_partition(out))
        else:
            for b in out.blocks:
                if len(b) > 1 and u.locate(restrict(A, b)[0])[0] not in T:
                    report.fail(reason="class is not in the torsion class", block=list(b),
                                value=format_partition(out))
    return out


def ka_from_torsion(u, tau: TorsionPair):
    if not check_torsion_theory(u, tau).ok:
        raise NotATorsionTheory(f"{tau.name or 'pair'} is not a torsion theory")
    vals = [t_congruence(u, tau.torsion, A) for A in u.acts]
    return make_radical(u, vals, f"t({tau.name})" if tau.name else "t")


def torsion_from_ka(u, r) -> TorsionPair:
    if not check_ka(u, r).ok:
        raise NotKA(f"{r.name or 'assignment'} is not a Kurosh-Amitsur radical")
    return make_pair(u, radical_class(u, r), semisimple_class(u, r),
                     f"tau({r.name})" if r.name else "")


def check_t_construction(u, tau: TorsionPair) -> AxiomReport:
    """The torsion-to-radical half of the correspondence, step by step."""
    T, F = tau.torsion, tau.torsion_free
    rep = AxiomReport("t-construction", "ka radicals and torsion theories")
    rep.notes.extend([ASSUMPTIONS[0], HOM_CONVENTION])
    largest = rep.part("largest", "t-construction: largest Rees congruence")
    free = rep.part("quotient", "t-construction: quotient torsion-free")
    pre = rep.part("preimage", "t-construction: preimage in T")
    ka = rep.part("ka", "ka radicals and torsion theories")
    vals = []
    for i, A in enumerate(u.acts):
        chi = t_congruence(u, T, A, report=largest)
        vals.append(chi)
        Q, pi = quotient(A, chi)
        if u.locate(Q)[0] not in F:
            free.fail(act=u.name(i), value=format_partition(chi))
        for b in T:
            B = u.acts[b]
            for f in hom_maps(B, Q):
                img = set(f)
                preimage = [a for a in A.carrier if pi.map[a] in img]
                if len(img) > 1 or u.locate(restrict(A, preimage)[0])[0] not in T:
                    pre.fail(act=u.name(i), torsion=u.name(b), hom=list(f), preimage=preimage)
    r = make_radical(u, vals)
    sub = check_ka(u, r)
    for key, p in sub.parts.items():
        for w in p.witnesses:
            ka.fail(part=key, **w)
    if radical_class(u, r).members != T.members:
        ka.fail(reason="radical class of t differs from the torsion class")
    if semisimple_class(u, r).members != F.members:
        ka.fail(reason="semisimple class of t differs from the torsion-free class")
    return rep


def coproduct_closure_check(u, C: ActClass) -> AxiomReport:
    rep = AxiomReport("coproduct-closure", "coproduct closure")
    members = sorted(C.members)
    tested = 0
    for x in members:
        for y in members:
            if y < x:
                continue
            A, B = u.acts[x], u.acts[y]
            if A.size + B.size > u.max_size:
                rep.skipped.append({"pair": [u.name(x), u.name(y)], "size": A.size + B.size,
                                    "bound": u.max_size})
                continue
            tested += 1
            j = u.locate(coproduct(A, B))[0]
            if j not in C:
                rep.fail(left=u.name(x), right=u.name(y), coproduct=u.name(j))
    rep.data["pairs_tested"] = tested
    rep.data["closed_within_bound"] = not rep.witnesses
    return rep
