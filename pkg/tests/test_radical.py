import pytest

from sact.algebra import build_universe, enumerate_monoids
from sact.congruence import diagonal, total
from sact.errors import BoundExceeded, NotHoehnke
from sact.radical import (
    all_class,
    all_classes,
    check_hereditary,
    check_hoehnke,
    check_ka,
    check_ka_redundancy,
    check_pair_conditions,
    check_radical_closure,
    check_semisimple_closure,
    delta_radical,
    enumerate_radicals,
    make_radical,
    nabla_radical,
    pointwise_join,
    radical_class,
    radical_from_radical_class,
    radical_from_semisimple,
    radical_leq,
    reflect,
    semisimple_class,
    trivial_class,
    verify_reflection,
)
from oracles import brute_radicals

from conftest import universe

# (universe, hoehnke, hereditary, ka), frozen from the unpruned oracle
COUNTS = [("S1", 3, 2, 2, 2), ("S2", 2, 4, 4, 4), ("S2", 3, 4, 4, 4), ("Z2", 3, 6, 4, 5)]
SMALL = [("S1", 3), ("S2", 2), ("Z2", 3)]


@pytest.mark.parametrize("name,k,h,her,ka", COUNTS)
def test_frozen_counts(name, k, h, her, ka):
    u = universe(name, k)
    assert [len(enumerate_radicals(u, f)) for f in ("hoehnke", "hereditary", "ka")] == [h, her, ka]


@pytest.mark.parametrize("name,k", SMALL)
@pytest.mark.parametrize("kind", ["hoehnke", "hereditary", "ka"])
def test_pruned_search_matches_unpruned_oracle(name, k, kind):
    u = universe(name, k)
    got = {tuple(v.labels for v in r.values) for r in enumerate_radicals(u, kind)}
    assert got == set(brute_radicals(u.acts, kind))


@pytest.mark.parametrize("name,k", SMALL)
def test_delta_and_nabla_pass_everything(name, k):
    u = universe(name, k)
    for r in (delta_radical(u), nabla_radical(u)):
        assert check_hoehnke(u, r).ok and check_hereditary(u, r).ok and check_ka(u, r).ok
        assert check_ka_redundancy(u, r).ok
        vals = {x.values for x in enumerate_radicals(u)}
        assert r.values in vals


def test_nabla_on_one_act_fails_with_hom_witness():
    u = universe("S1", 3)
    vals = [diagonal(A) for A in u.acts]
    i = u.index_of_name("a2_0")
    vals[i] = total(u.acts[i])
    rep = check_hoehnke(u, make_radical(u, vals))
    assert not rep.ok
    w = rep.parts["functorial"].witnesses[0]
    assert w["source"] == "a2_0" and len(set(w["hom"])) == 2


def test_hoehnke_but_not_hereditary():
    u = universe("Z2", 3)
    hered = {r.values for r in enumerate_radicals(u, "hereditary")}
    odd = [r for r in enumerate_radicals(u) if r.values not in hered]
    assert odd
    for r in odd:
        rep = check_hereditary(u, r)
        assert not rep.ok and "subact" in rep.witnesses[0]


def test_classes_of_delta_and_nabla():
    u = universe("S2", 2)
    assert radical_class(u, nabla_radical(u)) == all_class(u)
    assert semisimple_class(u, nabla_radical(u)) == trivial_class(u)
    assert radical_class(u, delta_radical(u)) == trivial_class(u)
    assert semisimple_class(u, delta_radical(u)) == all_class(u)


def test_constructions_from_extreme_classes():
    u = universe("S2", 2)
    assert radical_from_semisimple(u, all_class(u)).values == delta_radical(u).values
    assert radical_from_semisimple(u, trivial_class(u)).values == nabla_radical(u).values
    assert radical_from_radical_class(u, trivial_class(u)).values == delta_radical(u).values
    assert radical_from_radical_class(u, all_class(u)).values == nabla_radical(u).values


@pytest.mark.parametrize("name,k", SMALL)
def test_semisimple_round_trip(name, k):
    u = universe(name, k)
    for r in enumerate_radicals(u):
        assert radical_from_semisimple(u, semisimple_class(u, r)).values == r.values


def test_pair_conditions_on_extremes():
    u = universe("S2", 2)
    assert check_pair_conditions(u, trivial_class(u), all_class(u)).ok
    assert check_pair_conditions(u, all_class(u), trivial_class(u)).ok


@pytest.mark.parametrize("name,k", SMALL)
def test_ka_classes_are_closed(name, k):
    u = universe(name, k)
    for r in enumerate_radicals(u, "ka"):
        assert check_semisimple_closure(u, semisimple_class(u, r)).ok
        assert check_radical_closure(u, radical_class(u, r)).ok
        assert check_pair_conditions(u, radical_class(u, r), semisimple_class(u, r)).ok


def test_extreme_classes_are_closed():
    u = universe("S2", 3)
    for C in (all_class(u), trivial_class(u)):
        assert check_semisimple_closure(u, C).ok
        assert check_radical_closure(u, C).ok


def test_product_skips_are_recorded():
    u = universe("S2", 2)
    rep = check_semisimple_closure(u, all_class(u))
    assert rep.parts["products"].skipped


def test_subact_product_closed_classes_give_closed_radical_classes():
    u = universe("S2", 2)
    for C in all_classes(u):
        rep = check_semisimple_closure(u, C)
        if rep.parts["subacts"].ok and rep.parts["products"].ok:
            r = radical_from_semisimple(u, C)
            assert check_radical_closure(u, radical_class(u, r)).ok


@pytest.mark.parametrize("name,k", SMALL)
def test_reflection(name, k):
    u = universe(name, k)
    ka = enumerate_radicals(u, "ka")
    hoehnke = enumerate_radicals(u)
    for r in hoehnke:
        assert verify_reflection(u, r, ka, hoehnke).ok
        rk = reflect(u, r)
        assert radical_leq(rk, r)
        assert reflect(u, rk).values == rk.values
    for q in ka:
        assert reflect(u, q).values == q.values


def test_reflection_strictly_shrinks_non_ka():
    u = universe("Z2", 3)
    ka = {r.values for r in enumerate_radicals(u, "ka")}
    non_ka = [r for r in enumerate_radicals(u) if r.values not in ka]
    assert non_ka
    for r in non_ka:
        rk = reflect(u, r)
        assert rk.values != r.values and radical_leq(rk, r)


def test_reflect_rejects_non_hoehnke():
    u = universe("S1", 3)
    vals = [diagonal(A) for A in u.acts]
    vals[2] = total(u.acts[2])
    with pytest.raises(NotHoehnke):
        reflect(u, make_radical(u, vals))


def test_nabla_reflection_join_side():
    u = universe("S2", 2)
    ka = enumerate_radicals(u, "ka")
    assert pointwise_join(u, [q for q in ka if radical_leq(q, nabla_radical(u))]).values == nabla_radical(u).values


def test_redundancy_over_every_small_monoid():
    for M in enumerate_monoids(1) + enumerate_monoids(2) + enumerate_monoids(3):
        u = build_universe(M, 2)
        for r in enumerate_radicals(u):
            assert check_ka_redundancy(u, r).ok


def test_trivial_only_universe_has_one_radical(S2):
    u = build_universe(S2, 1)
    assert len(enumerate_radicals(u)) == 1


def test_search_bound():
    with pytest.raises(BoundExceeded) as e:
        enumerate_radicals(universe("S2", 4))
    assert e.value.value == 81_000_000
