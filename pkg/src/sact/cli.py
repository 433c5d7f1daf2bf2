"""sact: batch command-line front end.

Exit codes: 0 pass, 1 fail, 2 usage or parse error, 3 bound exceeded, 4 partial.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .algebra import size_bound
from .errors import BoundExceeded, NotHoehnke, ParseError, SactError, UnknownTarget
from .fixtures import build_act, build_monoid, format_radical, parse_file, parse_universe_ref
from .radical import (
    FILTERS,
    check_hereditary,
    check_hoehnke,
    check_ka,
    check_ka_redundancy,
    check_pair_conditions,
    check_radical_closure,
    check_semisimple_closure,
    reflect,
    trivial_class,
    verify_reflection,
)
from .report import EXIT_BOUNDS, EXIT_USAGE, Report
from .suites import run_theorems
from .torsion import (
    check_t_construction,
    check_torsion_theory,
    coproduct_closure_check,
    enumerate_torsion_pairs,
)
from .workspace import Workspace

SUITES = ("hoehnke", "hereditary", "ka", "pair", "torsion", "reflection", "redundancy", "closure")


class UsageError(SactError):
    pass


def _emit(report: Report, args, out=None):
    out = out or sys.stdout
    if args.format == "records":
        out.write(report.render_records(timing=args.timing))
    else:
        out.write(report.render_human(timing=args.timing))
    return report.exit_code


def _universe(ws, args, targets=()):
    if args.universe:
        try:
            name, k = parse_universe_ref(args.universe)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return ws.universe(name, k)
    for t in targets:
        u = ws.radical_universe(t)
        if u is not None:
            return u
    raise UsageError("this command needs --universe NAME:SIZE")


# --- commands --------------------------------------------------------------------


def cmd_validate(ws, args):
    rep = Report("validate")
    paths = [Path(p) for p in args.paths] or sorted(ws.root.glob("*.sact"))
    invalid = False
    for path in paths:
        try:
            fx = parse_file(path)
        except OSError as exc:
            rep.add("read", "fixture syntax", "fail", str(path), error=str(exc))
            invalid = True
            continue
        except ParseError as exc:
            rep.add("parse", "fixture syntax", "fail", str(path), error=exc.msg,
                    line=exc.line, column=exc.column)
            invalid = True
            continue
        scratch = Workspace(ws.root, ws.cache_dir)
        scratch.fixtures = fx
        for name, d in sorted(fx.monoids.items()):
            try:
                build_monoid(d)
                rep.add("monoid", "monoid axioms", "pass", name, path=str(path), line=d.line)
            except SactError as exc:
                rep.add("monoid", "monoid axioms", "fail", name, path=str(path), line=d.line,
                        error=str(exc), kind=type(exc).__name__, **_witness(exc))
                invalid = True
        for name, d in sorted(fx.acts.items()):
            try:
                build_act(d, _monoid_for(ws, fx, d.monoid))
                rep.add("act", "act axioms", "pass", name, path=str(path), line=d.line)
            except SactError as exc:
                rep.add("act", "act axioms", "fail", name, path=str(path), line=d.line,
                        error=str(exc), kind=type(exc).__name__, **_witness(exc))
                invalid = True
        for name, d in sorted(fx.radicals.items()):
            scratch.fixtures.monoids = {**ws.fixtures.monoids, **fx.monoids}
            try:
                scratch.build_radical(d)
                rep.add("radical", "radical fixture", "pass", name, path=str(path), line=d.line)
            except BoundExceeded as exc:
                rep.add("radical", "radical fixture", "skip", name, path=str(path), line=d.line,
                        reason=str(exc))
            except SactError as exc:
                line = getattr(exc, "line", None) or d.line
                rep.add("radical", "radical fixture", "fail", name, path=str(path), line=line,
                        error=str(exc), kind=type(exc).__name__)
                invalid = True
    code = _emit(rep, args)
    return EXIT_USAGE if invalid else code


def _monoid_for(ws, fx, name):
    if name in fx.monoids:
        return build_monoid(fx.monoids[name])
    return ws.monoid(name)


def _witness(exc):
    for attr in ("triple", "element"):
        if hasattr(exc, attr):
            v = getattr(exc, attr)
            return {attr: list(v) if isinstance(v, tuple) else v}
    return {}


def cmd_universe(ws, args):
    u = ws.universe(args.monoid, args.max_size)
    rep = Report("universe", context={"monoid": args.monoid, "max_size": u.max_size})
    rep.add("universe", "universe", "info", args.monoid, acts=len(u),
            by_size={str(k): v for k, v in sorted(u.size_breakdown().items())})
    for i, A in enumerate(u.acts):
        rep.add("act", "universe", "info", u.name(i), size=A.size,
                action=[list(r) for r in A.action])
    for kind, where in ws.cache_events:
        print(f"cache {kind}: {where}", file=sys.stderr)
    return _emit(rep, args)


def _radicals(ws, u, targets, default_filter):
    if targets:
        return [ws.radical(t, u) for t in targets]
    return ws.enumerated(u, default_filter)


def cmd_check(ws, args):
    u = _universe(ws, args, args.targets)
    rep = Report(f"check-{args.suite}", context={"universe": u.max_size, "targets": list(args.targets)})
    s = args.suite
    if s in ("hoehnke", "hereditary", "ka"):
        fn = {"hoehnke": check_hoehnke, "hereditary": check_hereditary, "ka": check_ka}[s]
        for r in _radicals(ws, u, args.targets, s):
            rep.add_axiom(fn(u, r), r.name)
    elif s == "redundancy":
        for r in _radicals(ws, u, args.targets, "hoehnke"):
            rep.add_axiom(check_ka_redundancy(u, r), r.name)
    elif s == "reflection":
        hoehnke = ws.enumerated(u, "hoehnke")
        ka = ws.enumerated(u, "ka")
        for r in _radicals(ws, u, args.targets, "hoehnke"):
            rep.add_axiom(verify_reflection(u, r, ka, hoehnke), r.name)
    elif s == "pair":
        if len(args.targets) != 2:
            raise UsageError("check pair takes two class names: RADICAL-CLASS SEMISIMPLE-CLASS")
        R, S = (ws.act_class(t, u) for t in args.targets)
        rep.add_axiom(check_pair_conditions(u, R, S), f"({args.targets[0]}, {args.targets[1]})")
    elif s == "torsion":
        if args.targets:
            taus = [ws.torsion_pair(t, u) for t in args.targets]
        else:
            taus = enumerate_torsion_pairs(u)
        for tau in taus:
            tt = check_torsion_theory(u, tau)
            rep.add_axiom(tt, tau.name)
            if tt.ok:
                rep.add_axiom(check_t_construction(u, tau), tau.name)
    elif s == "closure":
        if not args.targets:
            raise UsageError("check closure needs at least one class name")
        for t in args.targets:
            C = ws.act_class(t, u)
            if args.kind in ("semisimple", "both"):
                rep.add_axiom(check_semisimple_closure(u, C), t)
            if args.kind in ("radical", "both"):
                rep.add_axiom(check_radical_closure(u, C), t)
    return _emit(rep, args)


def cmd_theorems(ws, args):
    monoid = ws.monoid(args.monoid)
    size = min(args.max_size, size_bound(monoid))
    u = ws.universe(args.monoid, size)
    rep = run_theorems(monoid.canonical, args.max_size, seed=args.seed, jobs=args.jobs, universe=u)
    rep.context["monoid_name"] = args.monoid
    return _emit(rep, args)


def cmd_reflect(ws, args):
    u = _universe(ws, args, [args.radical])
    r = ws.radical(args.radical, u)
    name = args.name or f"{args.radical}_k"
    rep = Report("reflect", context={"radical": args.radical, "result": name})
    try:
        rk = reflect(u, r)
    except NotHoehnke as exc:
        rep.add("reflect", "reflection", "fail", args.radical, error=str(exc))
        return _emit(rep, args)
    changed = 0
    for i, (a, b) in enumerate(zip(r.values, rk.values)):
        changed += a != b
        rep.add("value", "reflection", "info", u.name(i), value=str(b), before=str(a), changed=a != b)
    rep.add("reflect", "reflection", "pass", args.radical, changed_acts=changed)
    monoid_name = args.universe.split(":")[0] if args.universe else ws.fixtures.radicals[args.radical].monoid
    text = format_radical(name, f"{monoid_name}:{u.max_size}", rk)
    if not args.no_write:
        out = Path(args.output) if args.output else ws.root / f"{name}.sact"
        out.write_text(text, encoding="utf-8")
        print(f"wrote {out}", file=sys.stderr)
    return _emit(rep, args)


def cmd_enumerate(ws, args):
    u = _universe(ws, args)
    t0 = time.perf_counter()
    found = ws.enumerated(u, args.filter)
    rep = Report("enumerate-radicals", context={"filter": args.filter, "universe": args.universe})
    rep.timing["enumerate"] = time.perf_counter() - t0
    rep.add("count", "radical enumeration", "info", args.filter, count=len(found))
    for r in found:
        rep.add("radical", "radical enumeration", "info", r.name,
                values={nm: v for nm, v in r.describe()})
    return _emit(rep, args)


def cmd_coproduct(ws, args):
    u = _universe(ws, args)
    rep = Report("coproduct-check", context={"universe": args.universe})
    if args.targets:
        classes = [(t, ws.act_class(t, u)) for t in args.targets]
    else:
        classes = [("trivial", trivial_class(u))]
        for tau in enumerate_torsion_pairs(u):
            classes += [(f"{tau.name}.torsion", tau.torsion), (f"{tau.name}.torsion_free", tau.torsion_free)]
    for label, C in classes:
        res = coproduct_closure_check(u, C)
        rep.add("coproduct-closure", "coproduct closure", "info", label,
                closed_within_bound=not res.witnesses, witnesses=res.witnesses[:25],
                pairs_tested=res.data["pairs_tested"], bounded_skips=len(res.skipped))
    return _emit(rep, args)


# --- argument parsing --------------------------------------------------------------


def _globals(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--workspace", default=d("."), help="fixture directory (default: .)")
    p.add_argument("--max-size", type=int, default=d(3), help="largest act size in the universe")
    p.add_argument("--format", choices=("human", "records"), default=d("human"))
    p.add_argument("--seed", type=int, default=d(0), help="seed for sampled checks")
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes for the theorem battery")
    p.add_argument("--universe", default=d(None), metavar="NAME:SIZE")
    p.add_argument("--timing", action="store_true", default=d(False),
                   help="include wall-clock timing records")


def build_parser():
    parser = argparse.ArgumentParser(prog="sact", description="radical and torsion theory over finite S-acts")
    _globals(parser, False)
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        _globals(p, True)
        p.set_defaults(func=fn)
        return p

    p = cmd("validate", cmd_validate, help="parse and validate fixture files")
    p.add_argument("paths", nargs="*")
    p = cmd("universe", cmd_universe, help="build or load a universe and list its acts")
    p.add_argument("monoid")
    p = cmd("check", cmd_check, help="run one check suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("targets", nargs="*")
    p.add_argument("--kind", choices=("semisimple", "radical", "both"), default="both",
                   help="which closure characterization to check (closure suite)")
    p = cmd("theorems", cmd_theorems, help="run the whole verification battery")
    p.add_argument("--monoid", default="S1")
    p = cmd("reflect", cmd_reflect, help="compute the KA reflection of a Hoehnke radical")
    p.add_argument("radical")
    p.add_argument("--name", help="fixture name for the result (default: RADICAL_k)")
    p.add_argument("--output", help="file to write (default: WORKSPACE/NAME.sact)")
    p.add_argument("--no-write", action="store_true")
    p = cmd("enumerate-radicals", cmd_enumerate, help="list every radical passing a filter")
    p.add_argument("--filter", choices=FILTERS, default="hoehnke")
    p = cmd("coproduct-check", cmd_coproduct, help="look for coproducts escaping a class")
    p.add_argument("targets", nargs="*")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_size < 0 or args.jobs < 1:
        parser.error("--max-size must be >= 0 and --jobs >= 1")
    try:
        ws = Workspace.load(args.workspace, strict=args.func is not cmd_validate)
        return args.func(ws, args)
    except BoundExceeded as exc:
        print(f"sact: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except (UsageError, UnknownTarget, ParseError) as exc:
        print(f"sact: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SactError as exc:
        print(f"sact: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
