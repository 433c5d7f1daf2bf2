import json
import subprocess
import sys

import pytest

from sact.cli import main
from sact.workspace import Workspace

Z2 = """\
monoid Z2
elements 2
identity 0
table
0 1
1 0
"""


@pytest.fixture
def ws(tmp_path, monkeypatch):
    monkeypatch.delenv("SACT_CACHE_DIR", raising=False)
    (tmp_path / "z2.sact").write_text(Z2)
    return tmp_path


def run(ws, capsys, *argv):
    code = main(["--workspace", str(ws), "--format", "records", *argv])
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines()]


def findings(records):
    return [r for r in records if r["record"] == "finding"]


def test_validate_good(ws, capsys):
    code, recs = run(ws, capsys, "validate")
    assert code == 0 and recs[0]["verdict"] == "pass"


def test_validate_wrong_arity(ws, capsys):
    bad = ws / "bad.sact"
    bad.write_text("act a over Z2\nsize 2\naction\n0 1\n1 0 0\n")
    code, recs = run(ws, capsys, "validate", str(bad))
    assert code == 2
    f = findings(recs)[0]
    assert f["check"] == "parse" and f["detail"]["line"] == 5 and "row" in f["detail"]["error"]


def test_validate_nonassociative(ws, capsys):
    bad = ws / "na.sact"
    bad.write_text("monoid NA\nelements 3\nidentity 0\ntable\n0 1 2\n1 2 2\n2 1 2\n")
    code, recs = run(ws, capsys, "validate")
    assert code == 2
    f = next(f for f in findings(recs) if f["subject"] == "NA")
    assert f["detail"]["kind"] == "NonAssociative" and len(f["detail"]["triple"]) == 3


def test_other_commands_reject_broken_workspace(ws, capsys):
    (ws / "bad.sact").write_text("nonsense\n")
    assert main(["--workspace", str(ws), "universe", "S1"]) == 2


@pytest.mark.parametrize("monoid,size,count", [("S1", 3, 4), ("S2", 2, 4), ("Z2", 3, 6)])
def test_universe_counts(ws, capsys, monoid, size, count):
    code, recs = run(ws, capsys, "universe", monoid, "--max-size", str(size))
    assert code == 0
    assert findings(recs)[0]["detail"]["acts"] == count
    assert len(findings(recs)) == count + 1


def test_universe_cache_round_trip(ws, capsys):
    first = run(ws, capsys, "universe", "S2", "--max-size", "3")
    cached = list((ws / ".sact-cache").glob("universe-*.json"))
    assert len(cached) == 1
    second = run(ws, capsys, "universe", "S2", "--max-size", "3")
    assert first == second
    w = Workspace.load(ws)
    u = w.universe("S2", 3)
    assert w.cache_events == [("hit", str(cached[0]))]
    from sact.algebra import build_universe, idempotent_monoid

    assert u.acts == build_universe(idempotent_monoid(), 3).acts


def test_tampered_cache_is_rebuilt(ws, capsys):
    run(ws, capsys, "universe", "S2", "--max-size", "2")
    path = next((ws / ".sact-cache").glob("universe-*.json"))
    data = json.loads(path.read_text())
    data["acts"] = data["acts"][:-1]
    path.write_text(json.dumps(data))
    w = Workspace.load(ws)
    assert len(w.universe("S2", 2)) == 4
    assert w.cache_events[0][0] == "invalid"


def test_cache_keyed_by_monoid_not_name(ws, capsys):
    (ws / "alias.sact").write_text("monoid E\nelements 2\nidentity 1\ntable\n0 0\n0 1\n")
    run(ws, capsys, "universe", "S2", "--max-size", "2")
    w = Workspace.load(ws)
    w.universe("E", 2)
    assert w.cache_events[0][0] == "hit"


def test_cache_dir_override(ws, capsys, tmp_path_factory, monkeypatch):
    elsewhere = tmp_path_factory.mktemp("cache")
    monkeypatch.setenv("SACT_CACHE_DIR", str(elsewhere))
    run(ws, capsys, "universe", "S1", "--max-size", "2")
    assert list(elsewhere.glob("universe-*.json"))
    assert not (ws / ".sact-cache").exists()


def test_universe_bound_exit_code(ws, capsys):
    assert main(["--workspace", str(ws), "universe", "S2", "--max-size", "6"]) == 3


def test_check_ka_on_delta(ws, capsys):
    code, recs = run(ws, capsys, "check", "ka", "delta", "--universe", "S1:3")
    assert code == 0 and recs[0]["verdict"] == "pass"


def test_check_pair_all_trivials(ws, capsys):
    code, _ = run(ws, capsys, "check", "pair", "all", "trivials", "--universe", "S2:2")
    assert code == 0


def test_check_reflection_over_all_hoehnke(ws, capsys):
    code, recs = run(ws, capsys, "check", "reflection", "--universe", "S1:3")
    assert code == 0
    adj = [f for f in findings(recs) if f["check"] == "reflection.adjunction"]
    assert len(adj) == 2 and all(f["status"] == "pass" for f in adj)


def test_check_failure_exit_code(ws, capsys):
    (ws / "bad.sact").write_text("radical odd over S1:2\na0_0 : partition {}\na1_0 : partition {0}\na2_0 : partition {0 | 1}\n")
    code, _ = run(ws, capsys, "check", "hoehnke", "odd")
    assert code == 0
    (ws / "bad.sact").write_text("radical odd over S1:3\na0_0 : partition {}\na1_0 : partition {0}\n"
                                 "a2_0 : partition {0 1}\na3_0 : partition {0 | 1 | 2}\n")
    code, recs = run(ws, capsys, "check", "hoehnke", "odd")
    assert code == 1 and recs[0]["verdict"] == "fail"


def test_unknown_target(ws, capsys):
    assert main(["--workspace", str(ws), "check", "ka", "nope", "--universe", "S1:3"]) == 2
    assert main(["--workspace", str(ws), "check", "ka", "delta"]) == 2


def test_check_torsion_and_closure(ws, capsys):
    (ws / "c.sact").write_text("class zs = predicate all-zeros\n")
    assert run(ws, capsys, "check", "torsion", "--universe", "Z2:3")[0] == 0
    code, recs = run(ws, capsys, "check", "closure", "zs", "--universe", "S2:2", "--kind", "semisimple")
    assert code in (0, 1) and all(f["check"].startswith("semisimple") for f in findings(recs))


@pytest.mark.parametrize("monoid,size", [("S1", 2), ("S2", 2)])
def test_theorems_full_pass(ws, capsys, monoid, size):
    code, recs = run(ws, capsys, "theorems", "--monoid", monoid, "--max-size", str(size))
    assert code == 0 and recs[0]["verdict"] == "pass"
    counts = next(f for f in findings(recs) if f["check"] == "radicals")
    assert counts["detail"]["ka"] == {"S1": 2, "S2": 4}[monoid]


def test_theorems_beyond_bound_is_partial(ws, capsys):
    code, recs = run(ws, capsys, "theorems", "--monoid", "S2", "--max-size", "7")
    assert code == 4 and recs[0]["verdict"] == "partial"
    skips = [f for f in findings(recs) if f["status"] == "skip"]
    assert skips[0]["check"] == "max-size" and skips[0]["detail"]["bound"] == 4


def test_theorems_deterministic_and_parallel_safe(ws, capsys):
    a = run(ws, capsys, "theorems", "--monoid", "Z2", "--max-size", "3")
    b = run(ws, capsys, "theorems", "--monoid", "Z2", "--max-size", "3")
    c = run(ws, capsys, "theorems", "--monoid", "Z2", "--max-size", "3", "--jobs", "2")
    assert a == b == c


@pytest.mark.parametrize("name", ["delta", "nabla"])
def test_reflect_fixes_extremes(ws, capsys, name):
    code, recs = run(ws, capsys, "reflect", name, "--universe", "S2:2")
    assert code == 0
    assert not any(f["detail"].get("changed") for f in findings(recs))
    assert (ws / f"{name}_k.sact").exists()


def test_reflect_non_ka_shrinks_and_writes_fixture(ws, capsys):
    code, recs = run(ws, capsys, "reflect", "hoehnke4", "--universe", "Z2:3", "--name", "fixed")
    assert code == 0
    assert sum(1 for f in findings(recs) if f["detail"].get("changed")) >= 1
    code, recs = run(ws, capsys, "check", "ka", "fixed")
    assert code == 0


def test_reflect_non_hoehnke(ws, capsys):
    (ws / "odd.sact").write_text("radical odd over S1:3\na0_0 : partition {}\na1_0 : partition {0}\n"
                                 "a2_0 : partition {0 1}\na3_0 : partition {0 | 1 | 2}\n")
    code, _ = run(ws, capsys, "reflect", "odd", "--no-write")
    assert code == 1


def test_enumerate_and_coproducts(ws, capsys):
    code, recs = run(ws, capsys, "enumerate-radicals", "--universe", "Z2:3", "--filter", "ka")
    assert code == 0 and findings(recs)[0]["detail"]["count"] == 5
    assert main(["--workspace", str(ws), "enumerate-radicals", "--universe", "S2:4"]) == 3
    capsys.readouterr()
    code, recs = run(ws, capsys, "coproduct-check", "--universe", "S2:2")
    first = findings(recs)[0]
    assert first["subject"] == "trivial" and not first["detail"]["closed_within_bound"]


def test_human_and_records_agree(ws, capsys):
    main(["--workspace", str(ws), "check", "ka", "delta", "--universe", "S1:3"])
    human = capsys.readouterr().out
    code, recs = run(ws, capsys, "check", "ka", "delta", "--universe", "S1:3")
    for f in findings(recs):
        assert f["check"] in human and f["anchor"] in human


def test_module_entry_point(ws):
    out = subprocess.run([sys.executable, "-m", "sact", "--workspace", str(ws), "universe", "S1",
                          "--max-size", "1"], capture_output=True, text=True)
    assert out.returncode == 0 and "a1_0" in out.stdout


def test_structural_revalidation_behind_the_digest(ws, capsys):
    from sact.workspace import _digest

    run(ws, capsys, "universe", "S2", "--max-size", "2")
    path = next((ws / ".sact-cache").glob("universe-*.json"))
    data = json.loads(path.read_text())
    data["acts"][2], data["acts"][3] = data["acts"][3], data["acts"][2]  # break the sort order
    data["digest"] = _digest(data)
    path.write_text(json.dumps(data))
    w = Workspace.load(ws)
    w.universe("S2", 2)
    assert w.cache_events[0][0] == "invalid"
