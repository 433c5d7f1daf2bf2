"""Line-oriented text fixtures for monoids, acts, classes, radicals and torsion pairs.

Grammar (blank lines and ``#`` comments are ignored)::

    monoid <name>
    elements <n>
    identity <i>
    table
    <n rows of n indices>

    act <name> over <monoid-name>
    size <m>
    action
    <one row of m indices per monoid element; no rows when m = 0>

    class <name> = acts <act-name> ...
    class <name> = predicate <predicate-id>

    radical <name> over <monoid-name>:<max-size>
    <act-name> : partition {0 1 | 2}
    ...

    torsion <name> = (<class-name>, <class-name>)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import validate_act, validate_monoid
from .congruence import format_partition, parse_partition
from .errors import ParseError, SactError

_INT = re.compile(r"[0-9]+\Z")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*\Z")
_UNIVERSE = re.compile(r"([A-Za-z_][A-Za-z0-9_.\-]*):([0-9]+)\Z")


@dataclass
class MonoidDef:
    name: str
    identity: int
    table: list
    line: int


@dataclass
class ActDef:
    name: str
    monoid: str
    rows: list
    size: int
    line: int


@dataclass
class ClassDef:
    name: str
    kind: str  # "acts" or "predicate"
    items: list
    line: int


@dataclass
class RadicalDef:
    name: str
    monoid: str
    max_size: int
    entries: list  # (act name, blocks, line)
    line: int


@dataclass
class TorsionDef:
    name: str
    torsion: str
    torsion_free: str
    line: int


@dataclass
class Fixtures:
    monoids: dict = field(default_factory=dict)
    acts: dict = field(default_factory=dict)
    classes: dict = field(default_factory=dict)
    radicals: dict = field(default_factory=dict)
    torsion: dict = field(default_factory=dict)
    sources: dict = field(default_factory=dict)  # (kind, name) -> path

    def merge(self, other: "Fixtures"):
        for kind in ("monoids", "acts", "classes", "radicals", "torsion"):
            mine, theirs = getattr(self, kind), getattr(other, kind)
            for name, d in theirs.items():
                if name in mine:
                    raise ParseError(f"duplicate {kind[:-1] if kind != 'torsion' else kind} name {name!r}",
                                     line=d.line, path=other.sources.get((kind, name)))
                mine[name] = d
                self.sources[(kind, name)] = other.sources.get((kind, name))


def parse_universe_ref(text) -> tuple:
    m = _UNIVERSE.match(text.strip())
    if not m:
        raise ValueError(f"universe reference must look like NAME:SIZE, got {text!r}")
    return m.group(1), int(m.group(2))


def _int(tok, lineno, col, path):
    if not _INT.match(tok):
        raise ParseError(f"expected a base-10 index, got {tok!r}", lineno, col, path)
    return int(tok)


def _name(tok, lineno, col, path):
    if not _NAME.match(tok):
        raise ParseError(f"bad name {tok!r}", lineno, col, path)
    return tok


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


def _row(line, lineno, arity, path):
    toks = line.split()
    if len(toks) != arity:
        raise ParseError(f"row has {len(toks)} entries, expected {arity}", lineno, 1, path)
    out = []
    col = 1
    for tok in toks:
        col = line.index(tok, col - 1) + 1
        out.append(_int(tok, lineno, col, path))
        col += len(tok)
    return out


def _expect(lines, keyword, path, last):
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError(f"unexpected end of input, expected {keyword!r}", last, None, path) from None
    toks = line.split()
    if toks[0] != keyword:
        raise ParseError(f"expected {keyword!r}, got {toks[0]!r}", lineno, 1, path)
    return lineno, toks


class _Peek:
    def __init__(self, it):
        self.it = iter(it)
        self.buf = []

    def __iter__(self):
        return self

    def __next__(self):
        if self.buf:
            return self.buf.pop()
        return next(self.it)

    def peek(self):
        if not self.buf:
            try:
                self.buf.append(next(self.it))
            except StopIteration:
                return None
        return self.buf[-1]


def parse_text(text: str, path=None) -> Fixtures:
    fx = Fixtures()
    lines = _Peek(_lines(text))

    def add(kind, name, d):
        table = getattr(fx, kind)
        if name in table:
            raise ParseError(f"duplicate name {name!r}", d.line, None, path)
        table[name] = d
        fx.sources[(kind, name)] = path

    for lineno, line in lines:
        toks = line.split()
        head = toks[0]
        if head == "monoid":
            if len(toks) != 2:
                raise ParseError("expected 'monoid <name>'", lineno, 1, path)
            name = _name(toks[1], lineno, 8, path)
            ln, t = _expect(lines, "elements", path, lineno)
            if len(t) != 2:
                raise ParseError("expected 'elements <n>'", ln, 1, path)
            n = _int(t[1], ln, 10, path)
            ln, t = _expect(lines, "identity", path, ln)
            if len(t) != 2:
                raise ParseError("expected 'identity <i>'", ln, 1, path)
            ident = _int(t[1], ln, 10, path)
            ln, t = _expect(lines, "table", path, ln)
            rows = []
            for _ in range(n):
                try:
                    ln, rl = next(lines)
                except StopIteration:
                    raise ParseError(f"table needs {n} rows", ln, None, path) from None
                rows.append(_row(rl, ln, n, path))
            add("monoids", name, MonoidDef(name, ident, rows, lineno))
        elif head == "act":
            if len(toks) != 4 or toks[2] != "over":
                raise ParseError("expected 'act <name> over <monoid>'", lineno, 1, path)
            name = _name(toks[1], lineno, 5, path)
            mname = _name(toks[3], lineno, None, path)
            ln, t = _expect(lines, "size", path, lineno)
            if len(t) != 2:
                raise ParseError("expected 'size <m>'", ln, 1, path)
            size = _int(t[1], ln, 6, path)
            ln, t = _expect(lines, "action", path, ln)
            rows = []
            if size > 0:
                while True:
                    nxt = lines.peek()
                    if nxt is None or not _INT.match(nxt[1].split()[0]):
                        break
                    ln, rl = next(lines)
                    rows.append(_row(rl, ln, size, path))
            add("acts", name, ActDef(name, mname, rows, size, lineno))
        elif head == "class":
            if len(toks) < 4 or toks[2] != "=" or toks[3] not in ("acts", "predicate"):
                raise ParseError("expected 'class <name> = acts ...' or '= predicate <id>'", lineno, 1, path)
            name = _name(toks[1], lineno, 7, path)
            items = [_name(x, lineno, None, path) for x in toks[4:]]
            if toks[3] == "predicate" and len(items) != 1:
                raise ParseError("predicate classes take exactly one predicate id", lineno, None, path)
            add("classes", name, ClassDef(name, toks[3], items, lineno))
        elif head == "radical":
            if len(toks) != 4 or toks[2] != "over":
                raise ParseError("expected 'radical <name> over <monoid>:<max-size>'", lineno, 1, path)
            name = _name(toks[1], lineno, 9, path)
            try:
                mname, k = parse_universe_ref(toks[3])
            except ValueError as exc:
                raise ParseError(str(exc), lineno, None, path) from None
            entries = []
            while True:
                nxt = lines.peek()
                if nxt is None or " : " not in nxt[1]:
                    break
                ln, rl = next(lines)
                act_name, lit = (x.strip() for x in rl.split(" : ", 1))
                _name(act_name, ln, 1, path)
                try:
                    blocks = parse_partition(lit)
                except (ValueError, SactError) as exc:
                    raise ParseError(str(exc), ln, rl.index(":") + 2, path) from None
                entries.append((act_name, blocks, ln))
            add("radicals", name, RadicalDef(name, mname, k, entries, lineno))
        elif head == "torsion":
            m = re.match(r"torsion\s+(\S+)\s*=\s*\(\s*(\S+?)\s*,\s*(\S+?)\s*\)\s*\Z", line.strip())
            if not m:
                raise ParseError("expected 'torsion <name> = (<class>, <class>)'", lineno, 1, path)
            name = _name(m.group(1), lineno, 9, path)
            add("torsion", name, TorsionDef(name, m.group(2), m.group(3), lineno))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, 1, path)
    return fx


def parse_file(path) -> Fixtures:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read(), path=str(path))


def build_monoid(d: MonoidDef):
    return validate_monoid(d.table, d.identity)


def build_act(d: ActDef, monoid):
    if d.size > 0 and len(d.rows) != monoid.size:
        raise ParseError(f"act {d.name!r} needs {monoid.size} action rows, got {len(d.rows)}", d.line)
    if d.size == 0:
        from .algebra import empty_act

        return empty_act(monoid)
    return validate_act(monoid, d.rows)


def format_monoid(name, M) -> str:
    lines = [f"monoid {name}", f"elements {M.size}", f"identity {M.identity}", "table"]
    lines += [" ".join(str(v) for v in row) for row in M.table]
    return "\n".join(lines) + "\n"


def format_act(name, monoid_name, A) -> str:
    lines = [f"act {name} over {monoid_name}", f"size {A.size}", "action"]
    if A.size:
        lines += [" ".join(str(v) for v in row) for row in A.action]
    return "\n".join(lines) + "\n"


def format_class(name, act_names) -> str:
    return " ".join([f"class {name} = acts", *act_names]) + "\n"


def format_radical(name, universe_ref, r) -> str:
    lines = [f"radical {name} over {universe_ref}"]
    lines += [f"{nm} : {format_partition(v)}" for nm, v in zip(r.universe.names, r.values)]
    return "\n".join(lines) + "\n"


def format_torsion(name, tname, fname) -> str:
    return f"torsion {name} = ({tname}, {fname})\n"
