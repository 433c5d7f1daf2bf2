import pytest

from sact.algebra import idempotent_monoid, validate_act
from sact.errors import CompatibilityViolation, NonAssociative, ParseError
from sact.fixtures import (
    build_act,
    build_monoid,
    format_act,
    format_class,
    format_monoid,
    format_radical,
    format_torsion,
    parse_text,
    parse_universe_ref,
)
from sact.radical import enumerate_radicals

from conftest import universe

GOOD = """\
# idempotent with the identity last
monoid E
elements 2
identity 1
table
0 0
0 1

act c3 over E   # e sends everything to 0
size 3
action
0 0 0
0 1 2

act nothing over E
size 0
action

class small = acts c3 nothing
class z = predicate has-zero
radical r over S1:2
a0_0 : partition {}
a1_0 : partition {0}
a2_0 : partition {0 1}
torsion tp = (small, z)
"""


def test_parse_good_file():
    fx = parse_text(GOOD, "good.sact")
    assert set(fx.monoids) == {"E"} and set(fx.acts) == {"c3", "nothing"}
    M = build_monoid(fx.monoids["E"])
    A = build_act(fx.acts["c3"], M)
    assert A.size == 3 and build_act(fx.acts["nothing"], M).size == 0
    assert fx.classes["z"].kind == "predicate"
    assert [e[1] for e in fx.radicals["r"].entries] == [(), ((0,),), ((0, 1),)]
    assert fx.torsion["tp"].torsion_free == "z"


@pytest.mark.parametrize("text,line,col", [
    ("monoid M\nelements 2\nidentity 0\ntable\n0 1\n1 0 1\n", 6, 1),
    ("monoid M\nelements 2\nidentity 0\ntable\n0 1\n1 x\n", 6, 3),
    ("monoid M\nelements 1\nidentity -1\ntable\n0\n", 3, 10),
    ("bogus line\n", 1, 1),
    ("act a over M\nsize 2\naction\n0 1 1\n", 4, 1),
])
def test_parse_errors_carry_positions(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_text(text)
    assert (e.value.line, e.value.column) == (line, col)


def test_duplicate_names():
    with pytest.raises(ParseError):
        parse_text("class a = acts x\nclass a = acts y\n")


def test_semantic_errors_surface_on_build():
    fx = parse_text("monoid M\nelements 3\nidentity 0\ntable\n0 1 2\n1 2 2\n2 1 2\n")
    with pytest.raises(NonAssociative):
        build_monoid(fx.monoids["M"])
    fx = parse_text("act a over S2\nsize 2\naction\n0 1\n1 0\n")
    with pytest.raises(CompatibilityViolation):
        build_act(fx.acts["a"], idempotent_monoid())


def test_missing_rows():
    fx = parse_text("act a over S2\nsize 2\naction\n0 1\n")
    with pytest.raises(ParseError):
        build_act(fx.acts["a"], idempotent_monoid())


def test_universe_refs():
    assert parse_universe_ref("S2:3") == ("S2", 3)
    for bad in ("S2", "S2:", ":3", "S2:x"):
        with pytest.raises(ValueError):
            parse_universe_ref(bad)


def test_format_round_trips():
    M = idempotent_monoid()
    A = validate_act(M, [[0, 1, 2], [0, 0, 0]])
    text = format_monoid("S", M) + format_act("a", "S", A) + format_class("c", ["a"]) + format_torsion("t", "c", "all")
    fx = parse_text(text)
    assert build_monoid(fx.monoids["S"]) == M
    assert build_act(fx.acts["a"], M) == A
    assert fx.classes["c"].items == ["a"]


def test_radical_format_round_trip():
    u = universe("Z2", 3)
    for r in enumerate_radicals(u):
        fx = parse_text(format_radical("x", "Z2:3", r))
        d = fx.radicals["x"]
        assert (d.monoid, d.max_size) == ("Z2", 3)
        assert [b for _, b, _ in d.entries] == [v.blocks for v in r.values]
