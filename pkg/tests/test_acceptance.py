"""The ten acceptance criteria, each printed as one PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import contextlib
import itertools
import subprocess
import sys
import time

from sact.algebra import Act, enumerate_actions, enumerate_monoids, quotient, restrict, subacts, trivial_monoid
from sact.congruence import enumerate_congruences, is_rees, make_system, rees_congruences, rees_of_system, system_of
from sact.radical import (
    all_classes,
    check_ka,
    check_ka_redundancy,
    check_pair_conditions,
    check_radical_closure,
    check_semisimple_closure,
    enumerate_radicals,
    pointwise_join,
    pointwise_meet,
    radical_class,
    radical_from_radical_class,
    radical_from_semisimple,
    radical_leq,
    reflect,
    semisimple_class,
    trivial_class,
)
from sact.torsion import (
    coproduct_closure_check,
    enumerate_torsion_pairs,
    ka_from_torsion,
    t_congruence,
    torsion_from_ka,
)
from oracles import brute_congruences

from conftest import universe

RESULTS = []
BELL = [1, 1, 2, 5, 15, 52]


@contextlib.contextmanager
def criterion(number, title, budget):
    t0 = time.perf_counter()
    status, note = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - t0
        status = "PASS" if elapsed < budget else "FAIL"
        note = f"{elapsed:.2f}s (budget {budget:.0f}s)"
    except AssertionError as exc:
        note = f"assertion failed: {exc}"
        raise
    finally:
        RESULTS.append(f"{status} criterion {number}: {title} [{note}]")
        print(RESULTS[-1])
    assert status == "PASS", RESULTS[-1]


def labelled_acts(max_order=2, max_size=4):
    for k in range(1, max_order + 1):
        for M in enumerate_monoids(k):
            for n in range(max_size + 1):
                for rows in enumerate_actions(M, n):
                    yield Act(M, n, rows)


def test_c01_congruence_oracle():
    with criterion(1, "congruence enumeration equals brute-force filter; Bell numbers", 10):
        for A in labelled_acts():
            assert {c.labels for c in enumerate_congruences(A)} == brute_congruences(A), A
        S1 = trivial_monoid()
        for n in range(6):
            assert len(enumerate_congruences(Act(S1, n, (tuple(range(n)),)))) == BELL[n]


def test_c02_rees_correspondence():
    with criterion(2, "Rees congruences correspond one-to-one with systems", 10):
        for A in labelled_acts():
            for chi in rees_congruences(A):
                assert rees_of_system(A, system_of(A, chi)) == chi
            nt = [B for B in subacts(A) if len(B) >= 2]
            for k in range(len(nt) + 1):
                for combo in itertools.combinations(nt, k):
                    if sum(map(len, combo)) == len(set().union(*map(set, combo))):
                        s = make_system(A, combo)
                        assert system_of(A, rees_of_system(A, s)) == s


UNIVERSES = (("S2", 2), ("S1", 3))


def test_c03_pair_conditions_both_directions():
    with criterion(3, "KA radical classes are exactly the pairs satisfying conditions (1)-(4)", 120):
        for name, k in UNIVERSES:
            u = universe(name, k)
            ka = enumerate_radicals(u, "ka")
            assert ka
            for r in ka:
                assert check_pair_conditions(u, radical_class(u, r), semisimple_class(u, r)).ok
            kv = {r.values for r in ka}
            classes = all_classes(u)
            for R, S in itertools.product(classes, repeat=2):
                if check_pair_conditions(u, R, S).ok:
                    q = radical_from_radical_class(u, R)
                    assert q.values in kv and check_ka(u, q).ok
                    assert (radical_class(u, q), semisimple_class(u, q)) == (R, S)


def test_c04_torsion_bijection():
    with criterion(4, "torsion theories and KA radicals are mutually inverse", 120):
        for name, k in UNIVERSES:
            u = universe(name, k)
            ka = enumerate_radicals(u, "ka")
            taus = enumerate_torsion_pairs(u)
            assert len(ka) == len(taus)
            assert {ka_from_torsion(u, t).values for t in taus} == {r.values for r in ka}
            for r in ka:
                assert ka_from_torsion(u, torsion_from_ka(u, r)).values == r.values
            for t in taus:
                back = torsion_from_ka(u, ka_from_torsion(u, t))
                assert (back.torsion, back.torsion_free) == (t.torsion, t.torsion_free)
                for A in u.acts:
                    chi = t_congruence(u, t.torsion, A)
                    assert is_rees(A, chi)
                    for b in chi.blocks:
                        if len(b) > 1:
                            assert u.locate(restrict(A, b)[0])[0] in t.torsion
                    assert u.locate(quotient(A, chi)[0])[0] in t.torsion_free


def _reflection_run():
    u = universe("S1", 3)
    return u, enumerate_radicals(u), enumerate_radicals(u, "ka")


def test_c05_reflection_join_and_meet():
    with criterion(5, "reflection equals the join of KA radicals below and the meet of Hoehnke radicals with the same radical class", 300):
        u, hoehnke, ka = _reflection_run()
        for r in hoehnke:
            rk = reflect(u, r)
            assert pointwise_join(u, [q for q in ka if radical_leq(q, r)]).values == rk.values
            same = [h for h in hoehnke if radical_class(u, h) == radical_class(u, r)]
            assert pointwise_meet(u, same).values == rk.values


def test_c06_ka_redundancy():
    with criterion(6, "Hoehnke radicals with KA (i) and (ii) satisfy (iii) and are reflection-fixed", 300):
        u, hoehnke, _ = _reflection_run()
        for r in hoehnke:
            rep = check_ka(u, r)
            if rep.parts["i"].ok and rep.parts["ii"].ok:
                assert rep.parts["iii"].ok
                assert reflect(u, r).values == r.values
            assert check_ka_redundancy(u, r).ok


def test_c07_reflection_adjunction():
    with criterion(7, "q <= r iff q <= reflect(r); reflect monotone, deflationary, idempotent", 300):
        u, hoehnke, ka = _reflection_run()
        for r in hoehnke:
            rk = reflect(u, r)
            assert radical_leq(rk, r) and reflect(u, rk).values == rk.values
            for q in ka:
                assert radical_leq(q, r) == radical_leq(q, rk)
            for s in hoehnke:
                if radical_leq(r, s):
                    assert radical_leq(rk, reflect(u, s))


def test_c08_closed_classes_give_closed_radical_classes():
    with criterion(8, "classes closed under subacts and bounded products yield closed radical classes", 120):
        u = universe("S2", 2)
        tested = 0
        for C in all_classes(u):
            rep = check_semisimple_closure(u, C)
            if not (rep.parts["subacts"].ok and rep.parts["products"].ok):
                continue
            tested += 1
            closure = check_radical_closure(u, radical_class(u, radical_from_semisimple(u, C)))
            assert all(closure.parts[p].ok for p in ("homomorphic", "inductive", "rees-extensions"))
        assert tested > 0


def test_c09_coproducts():
    with criterion(9, "trivial acts are not closed under coproducts; every torsion class is reported", 30):
        u = universe("S2", 2)
        rep = coproduct_closure_check(u, trivial_class(u))
        assert not rep.ok
        w = rep.witnesses[0]
        assert u.acts[u.index_of_name(w["left"])].size == 1 == u.acts[u.index_of_name(w["right"])].size
        assert u.acts[u.index_of_name(w["coproduct"])].size == 2
        for t in enumerate_torsion_pairs(u):
            for C in (t.torsion, t.torsion_free):
                res = coproduct_closure_check(u, C)
                assert res.witnesses or res.data["closed_within_bound"]


def test_c10_determinism(tmp_path):
    with criterion(10, "two theorems runs give byte-identical records", 120):
        cmd = [sys.executable, "-m", "sact", "--workspace", str(tmp_path), "--format", "records",
               "theorems", "--monoid", "S2", "--max-size", "3"]
        a = subprocess.run(cmd, capture_output=True, check=False)
        b = subprocess.run(cmd, capture_output=True, check=False)
        assert a.returncode == 0, a.stderr
        assert a.stdout == b.stdout and a.stdout


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                if name == "test_c10_determinism":
                    with tempfile.TemporaryDirectory() as d:
                        fn(Path(d))
                else:
                    fn()
            except AssertionError:
                pass
    sys.exit(0 if all(r.startswith("PASS") for r in RESULTS) else 1)
