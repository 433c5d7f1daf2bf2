"""Check suites and the full theorem battery, producing Reports."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from functools import cached_property

from .algebra import Monoid, build_universe, size_bound
from .congruence import enumerate_congruences, is_rees, rees_of_system, system_of
from .errors import BoundExceeded
from .radical import (
    ASSUMPTIONS,
    all_classes,
    check_hereditary,
    check_hoehnke,
    check_ka,
    check_ka_redundancy,
    check_pair_conditions,
    check_radical_closure,
    check_semisimple_closure,
    enumerate_radicals,
    make_class,
    radical_class,
    radical_from_radical_class,
    radical_from_semisimple,
    radical_leq,
    reflect,
    semisimple_class,
    tables,
    trivial_class,
    verify_reflection,
)
from .report import Report
from .torsion import (
    check_t_construction,
    check_torsion_theory,
    coproduct_closure_check,
    enumerate_torsion_pairs,
    ka_from_torsion,
    left_orthogonal,
    right_orthogonal,
    torsion_from_ka,
)

CLASS_BOUND = 1 << 12
PAIR_BOUND = 1 << 16
SAMPLE_SIZE = 2000


class Battery:
    """Lazily computed enumerations over one universe."""

    def __init__(self, u, seed=0):
        self.u = u
        self.seed = seed

    @cached_property
    def hoehnke(self):
        return enumerate_radicals(self.u, "hoehnke")

    @cached_property
    def hereditary(self):
        return enumerate_radicals(self.u, "hereditary")

    @cached_property
    def ka(self):
        return enumerate_radicals(self.u, "ka")

    @cached_property
    def ka_values(self):
        return {r.values for r in self.ka}

    @cached_property
    def torsion_pairs(self):
        return enumerate_torsion_pairs(self.u)

    def classes(self, report, check, anchor):
        """All classes, or a seeded sample with a skip record when there are too many."""
        k = len(tables(self.u).nontrivial())
        if (1 << k) <= CLASS_BOUND:
            return all_classes(self.u)
        rng = random.Random(self.seed)
        nt = tables(self.u).nontrivial()
        masks = sorted(rng.sample(range(1 << k), SAMPLE_SIZE))
        report.add(check, anchor, "skip", reason="class lattice sampled",
                   classes=1 << k, bound=CLASS_BOUND, sampled=SAMPLE_SIZE, seed=self.seed)
        return [make_class(self.u, [x for b, x in enumerate(nt) if m >> b & 1], f"mask{m}") for m in masks]


def _aggregate(report, check, anchor, items, subject=""):
    """One finding summarizing per-item AxiomReports."""
    failed = [(name, rep) for name, rep in items if not rep.ok]
    bounded = sum(len(p.skipped) for _, rep in items for p in [rep, *rep.parts.values()])
    detail = {"checked": len(items)}
    if bounded:
        detail["bounded_skips"] = bounded
    if failed:
        detail["failed"] = [name for name, _ in failed]
        wit = []
        for name, rep in failed[:5]:
            for key, p in ([("", rep)] + list(rep.parts.items())):
                for w in p.witnesses[:3]:
                    wit.append({"item": name, "part": key, **w})
        detail["witnesses"] = wit
    report.add(check, anchor, "fail" if failed else "pass", subject, **detail)


def _flag(report, check, anchor, ok, subject="", **detail):
    report.add(check, anchor, "pass" if ok else "fail", subject, **detail)


# --- theorem battery sections ---------------------------------------------------


def section_universe(b: Battery, report: Report):
    u = b.u
    report.add("universe", "universe", "info", "", acts=len(u),
               by_size={str(k): v for k, v in sorted(u.size_breakdown().items())},
               names=u.names)
    bad_lattice, bad_rees = [], []
    for i, A in enumerate(u.acts):
        try:
            lat = enumerate_congruences(A, bound=max(u.max_size, 1), self_check=True)
        except AssertionError:
            bad_lattice.append(u.name(i))
            continue
        for chi in lat:
            if is_rees(A, chi):
                if rees_of_system(A, system_of(A, chi)) != chi:
                    bad_rees.append(u.name(i))
        for chi in lat:
            s = system_of(A, chi)
            if system_of(A, rees_of_system(A, s)) != s:
                bad_rees.append(u.name(i))
    _flag(report, "congruence-lattice", "congruence lattice", not bad_lattice,
          failed=bad_lattice)
    _flag(report, "rees-correspondence", "rees correspondence", not bad_rees,
          failed=sorted(set(bad_rees)))


def section_enumeration(b: Battery, report: Report):
    u = b.u
    report.add("radicals", "radical enumeration", "info", "", hoehnke=len(b.hoehnke),
               hereditary=len(b.hereditary), ka=len(b.ka),
               assumptions=[ASSUMPTIONS[0]])
    _aggregate(report, "enumerated-hoehnke", "hoehnke radical",
               [(r.name, check_hoehnke(u, r)) for r in b.hoehnke])
    _aggregate(report, "enumerated-hereditary", "hereditary radical",
               [(r.name, check_hereditary(u, r)) for r in b.hereditary])
    _aggregate(report, "enumerated-ka", "kurosh-amitsur radical", [(r.name, check_ka(u, r)) for r in b.ka])
    ka_as_hoehnke = {r.values for r in b.hoehnke if check_ka(u, r).ok}
    _flag(report, "ka-filter", "kurosh-amitsur radical", ka_as_hoehnke == b.ka_values,
          filtered=len(ka_as_hoehnke), searched=len(b.ka_values))


def section_semisimple_radical(b: Battery, report: Report):
    u = b.u
    bad = [r.name for r in b.hoehnke
           if radical_from_semisimple(u, semisimple_class(u, r)).values != r.values]
    _flag(report, "r_S-roundtrip", "radical from semisimple class", not bad,
          checked=len(b.hoehnke), failed=bad)
    items = []
    for r in b.hoehnke:
        rep = check_semisimple_closure(u, semisimple_class(u, r))
        del rep.parts["congruence-extensions"]
        items.append((r.name, rep))
    _aggregate(report, "hoehnke-semisimple-closure", "semisimple class: subacts and products", items)


def _no_hom_image(u, i, S):
    t = tables(u)
    return all(t.quot[i][k] not in S or t.cons[i][k].is_total for k in range(len(t.cons[i])))


def _no_radical_subact(u, i, R):
    return all(j not in R for _, j, _ in tables(u).subs[i])


def section_class_characterization(b: Battery, report: Report):
    u = b.u
    _aggregate(report, "ka-semisimple-closure", "semisimple class closure",
               [(r.name, check_semisimple_closure(u, semisimple_class(u, r))) for r in b.ka])
    _aggregate(report, "ka-radical-closure", "radical class closure",
               [(r.name, check_radical_closure(u, radical_class(u, r))) for r in b.ka])
    bad_r, bad_s, bad_join = [], [], []
    for r in b.ka:
        R, S = radical_class(u, r), semisimple_class(u, r)
        if {i for i in range(len(u)) if _no_hom_image(u, i, S)} != set(R.members):
            bad_r.append(r.name)
        if {i for i in range(len(u)) if _no_radical_subact(u, i, R)} != set(S.members):
            bad_s.append(r.name)
        if radical_from_radical_class(u, R).values != r.values:
            bad_join.append(r.name)
    _flag(report, "radical-class-by-images", "radical class: no non-trivial image in S",
          not bad_r, checked=len(b.ka), failed=bad_r)
    _flag(report, "semisimple-class-by-subacts", "semisimple class: no non-trivial subact in R",
          not bad_s, checked=len(b.ka), failed=bad_s)
    _flag(report, "join-formula", "join formula",
          not bad_join, checked=len(b.ka), failed=bad_join)


def section_pairs(b: Battery, report: Report):
    u = b.u
    _aggregate(report, "pair-necessity", "pair conditions",
               [(r.name, check_pair_conditions(u, radical_class(u, r), semisimple_class(u, r)))
                for r in b.ka])
    classes = all_classes(u)
    pairs = [(R, S) for R in classes for S in classes]
    if len(pairs) > PAIR_BOUND:
        rng = random.Random(b.seed)
        pairs = sorted(rng.sample(pairs, SAMPLE_SIZE), key=lambda p: (p[0].label, p[1].label))
        report.add("pair-sufficiency", "pair conditions", "skip", "",
                   reason="class pairs sampled", pairs=len(classes) ** 2, bound=PAIR_BOUND,
                   sampled=SAMPLE_SIZE, seed=b.seed)
    passing, bad = 0, []
    for R, S in pairs:
        if not check_pair_conditions(u, R, S).ok:
            continue
        passing += 1
        q = radical_from_radical_class(u, R)
        if not (q.values in b.ka_values and radical_class(u, q) == R and semisimple_class(u, q) == S):
            bad.append([R.names(), S.names()])
    _flag(report, "pair-sufficiency", "pair conditions", not bad,
          pairs_checked=len(pairs), pairs_passing=passing, ka_radicals=len(b.ka), failed=bad[:10])


def section_torsion(b: Battery, report: Report):
    u = b.u
    taus = b.torsion_pairs
    report.add("torsion-pairs", "torsion theory", "info", "", count=len(taus),
               pairs=[{"name": t.name, "torsion": t.torsion.names(),
                       "torsion_free": t.torsion_free.names()} for t in taus])
    _aggregate(report, "torsion-theory", "torsion theory", [(t.name, check_torsion_theory(u, t)) for t in taus])
    _aggregate(report, "ka-to-torsion", "ka radical to torsion theory",
               [(r.name, check_torsion_theory(u, torsion_from_ka(u, r))) for r in b.ka])
    _aggregate(report, "t-construction", "ka radicals and torsion theories", [(t.name, check_t_construction(u, t)) for t in taus])
    from_taus = [ka_from_torsion(u, t) for t in taus]
    round1 = all(ka_from_torsion(u, torsion_from_ka(u, r)).values == r.values for r in b.ka)
    round2 = all(
        (torsion_from_ka(u, q).torsion, torsion_from_ka(u, q).torsion_free) == (t.torsion, t.torsion_free)
        for t, q in zip(taus, from_taus)
    )
    same = {q.values for q in from_taus} == b.ka_values and len(taus) == len(b.ka)
    _flag(report, "bijection", "ka radicals and torsion theories", round1 and round2 and same,
          ka_radicals=len(b.ka), torsion_pairs=len(taus), ka_roundtrip=round1, torsion_roundtrip=round2)
    galois_bad = 0
    classes = b.classes(report, "galois-identity", "orthogonality closure")
    for C in classes:
        R1 = right_orthogonal(u, C)
        if right_orthogonal(u, left_orthogonal(u, R1)) != R1:
            galois_bad += 1
        if not C <= left_orthogonal(u, R1):
            galois_bad += 1
    _flag(report, "galois-identity", "orthogonality closure", galois_bad == 0, classes=len(classes),
          failed=galois_bad)


def section_class_radical(b: Battery, report: Report):
    u = b.u
    items = []
    for C in b.classes(report, "class-radical", "radical of a subact-product closed class"):
        rep = check_semisimple_closure(u, C)
        if not (rep.parts["subacts"].ok and rep.parts["products"].ok):
            continue
        r = radical_from_semisimple(u, C)
        items.append((",".join(C.names()), check_radical_closure(u, radical_class(u, r))))
    _aggregate(report, "class-radical", "radical of a subact-product closed class", items)


def section_reflection_order(b: Battery, report: Report):
    u = b.u
    refl = {r.name: reflect(u, r) for r in b.hoehnke}
    bad = []
    for r in b.hoehnke:
        for s in b.hoehnke:
            if radical_leq(r, s) and not radical_leq(refl[r.name], refl[s.name]):
                bad.append([r.name, s.name])
    not_ka = [r.name for r in b.hoehnke if refl[r.name].values not in b.ka_values]
    _flag(report, "reflection-is-ka", "reflection: lands in KA radicals", not not_ka, checked=len(b.hoehnke), failed=not_ka)
    _flag(report, "reflection-monotone", "reflection: monotone", not bad,
          pairs=len(b.hoehnke) ** 2, failed=bad[:10])


def section_reflection(b: Battery, report: Report):
    u = b.u
    _aggregate(report, "reflection", "reflection",
               [(r.name, verify_reflection(u, r, b.ka, b.hoehnke)) for r in b.hoehnke])
    bad = []
    t = tables(u)
    for r in b.hoehnke:
        rk = reflect(u, r)
        for i, A in enumerate(u.acts):
            big = t.system_sets[i][t.cons_index[i][r.values[i]]]
            for B in system_of(A, rk.values[i]):
                if not any(set(B) <= set(C) for C in big):
                    bad.append({"radical": r.name, "act": u.name(i), "member": list(B)})
    _flag(report, "reflection-systems", "reflection: systems refine", not bad,
          checked=len(b.hoehnke), failed=bad[:10])
    below = [r.name for r in b.hoehnke if not radical_leq(reflect(u, r), r)]
    same_r = [r.name for r in b.hoehnke
              if radical_class(u, reflect(u, r)) != radical_class(u, r)]
    _flag(report, "reflection-below", "reflection: below", not below, failed=below)
    _flag(report, "reflection-radical-class", "reflection: same radical class", not same_r, failed=same_r)


def section_redundancy(b: Battery, report: Report):
    u = b.u
    premise = [r for r in b.hoehnke
               if (lambda k: k.parts["i"].ok and k.parts["ii"].ok)(check_ka(u, r))]
    _aggregate(report, "ka-redundancy", "ka redundancy", [(r.name, check_ka_redundancy(u, r)) for r in b.hoehnke])
    report.add("ka-redundancy-premise", "ka redundancy", "info", "", hoehnke=len(b.hoehnke),
               satisfying_i_ii=len(premise))


def section_adjunction(b: Battery, report: Report):
    u = b.u
    adj, defl, idem = [], [], []
    for r in b.hoehnke:
        rk = reflect(u, r)
        if not radical_leq(rk, r):
            defl.append(r.name)
        if reflect(u, rk).values != rk.values:
            idem.append(r.name)
        for q in b.ka:
            if radical_leq(q, r) != radical_leq(q, rk):
                adj.append([q.name, r.name])
    _flag(report, "reflection-adjunction", "reflection: adjunction", not adj,
          pairs=len(b.hoehnke) * len(b.ka), failed=adj[:10])
    _flag(report, "reflection-deflationary", "reflection: adjunction", not defl, failed=defl)
    _flag(report, "reflection-idempotent", "reflection: adjunction", not idem, failed=idem)


def section_coproducts(b: Battery, report: Report):
    u = b.u
    triv = coproduct_closure_check(u, trivial_class(u))
    report.add("coproduct-trivial", "coproduct closure", "info", "trivial",
               witnesses=triv.witnesses[:5], closed_within_bound=not triv.witnesses)
    reproduced = []
    for t in b.torsion_pairs:
        for side, C in (("torsion", t.torsion), ("torsion_free", t.torsion_free)):
            rep = coproduct_closure_check(u, C)
            report.add("coproduct-class", "coproduct closure", "info",
                       f"{t.name}.{side}", witnesses=rep.witnesses[:5],
                       closed_within_bound=not rep.witnesses, pairs_tested=rep.data["pairs_tested"])
            if rep.witnesses:
                reproduced.append(f"{t.name}.{side}")
    report.add("coproduct-claim", "coproduct closure",
               "pass" if reproduced else "info", "",
               reproduced_by=reproduced,
               note="witness found" if reproduced else "no witness at this scale")


SECTIONS = (
    ("universe", section_universe),
    ("enumeration", section_enumeration),
    ("semisimple-radical", section_semisimple_radical),
    ("class-characterization", section_class_characterization),
    ("pair-characterization", section_pairs),
    ("torsion-correspondence", section_torsion),
    ("class-radical", section_class_radical),
    ("reflection-order", section_reflection_order),
    ("reflection", section_reflection),
    ("ka-redundancy", section_redundancy),
    ("reflection-adjunction", section_adjunction),
    ("coproducts", section_coproducts),
)


def _run_section(monoid_table, identity, max_size, name, seed):
    monoid = Monoid(len(monoid_table), monoid_table, identity)
    u = build_universe(monoid, max_size)
    return run_section(Battery(u, seed), name)


def run_section(b: Battery, name) -> Report:
    fn = dict(SECTIONS)[name]
    rep = Report(name)
    t0 = time.perf_counter()
    try:
        fn(b, rep)
    except BoundExceeded as exc:
        rep.add(name, "bounds", "skip", "", reason=str(exc), value=exc.value, bound=exc.bound)
    rep.timing[name] = time.perf_counter() - t0
    return rep


def run_theorems(monoid: Monoid, max_size: int, seed=0, jobs=1, universe=None) -> Report:
    report = Report("theorems")
    limit = size_bound(monoid)
    size = max_size
    if max_size > limit:
        size = limit
        report.add("max-size", "bounds", "skip", "", requested=max_size, bound=limit,
                   reason=f"sizes {limit + 1}..{max_size} not enumerated; ran at {limit}")
    report.context = {"monoid": [list(r) for r in monoid.table], "max_size": size, "seed": seed}
    names = [nm for nm, _ in SECTIONS]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_section, [monoid.table] * len(names),
                                  [monoid.identity] * len(names), [size] * len(names),
                                  names, [seed] * len(names)))
    else:
        u = universe if universe is not None and universe.max_size == size else build_universe(monoid, size)
        b = Battery(u, seed)
        parts = [run_section(b, nm) for nm in names]
    for p in parts:
        report.extend(p)
    return report
