"""Named fixtures, built-in objects and the on-disk universe cache."""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
from pathlib import Path

from .algebra import (
    Act,
    Monoid,
    build_universe,
    canonical_form,
    empty_act,
    idempotent_monoid,
    quotient,
    restrict,
    to_canonical_monoid,
    trivial_monoid,
    validate_act,
    zeros,
    generated_subact,
    nontrivial_subacts,
    Universe,
)
from .congruence import enumerate_congruences, make_congruence
from .errors import ParseError, SactError, UnknownTarget
from .fixtures import Fixtures, build_act, build_monoid, parse_file
from .radical import (
    all_class,
    delta_radical,
    enumerate_radicals,
    make_class,
    make_radical,
    nabla_radical,
    trivial_class,
)
from .torsion import enumerate_torsion_pairs, make_pair

CACHE_VERSION = 1

BUILTIN_MONOIDS = {
    "S1": trivial_monoid,
    "S2": idempotent_monoid,
}


def _has_zero(A):
    return bool(zeros(A))


def _all_zeros(A):
    return len(zeros(A)) == A.size


def _cyclic(A):
    return A.size == 0 or any(len(generated_subact(A, a)) == A.size for a in A.carrier)


PREDICATES = {
    "trivial": lambda A: A.size <= 1,
    "all": lambda A: True,
    "has-zero": _has_zero,
    "all-zeros": _all_zeros,
    "cyclic": _cyclic,
}

_ENUMERATED = re.compile(r"(hoehnke|hereditary|ka)([0-9]+)\Z")
_TAU = re.compile(r"tau([0-9]+)\Z")


def monoid_key(monoid: Monoid) -> str:
    c = monoid.canonical
    blob = json.dumps([c.size, [list(r) for r in c.table]], separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


# --- cache -----------------------------------------------------------------------


def _digest(data) -> str:
    body = {k: data[k] for k in ("version", "monoid", "max_size", "acts")}
    return hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _dump_universe(u: Universe) -> dict:
    data = {
        "version": CACHE_VERSION,
        "monoid": [list(r) for r in u.monoid.table],
        "max_size": u.max_size,
        "acts": [[A.size, [list(r) for r in A.action]] for A in u.acts],
    }
    data["digest"] = _digest(data)
    return data


def _load_universe(data, monoid, max_size) -> Universe:
    """Rebuild a universe from cached data, re-checking every invariant.

    Completeness (no isomorphism class missing) is guarded by the digest;
    re-deriving it would cost as much as rebuilding.
    """
    if data.get("version") != CACHE_VERSION or data.get("max_size") != max_size:
        raise ValueError("cache version or size mismatch")
    if data.get("digest") != _digest(data):
        raise ValueError("cache digest mismatch")
    if [list(r) for r in monoid.table] != data["monoid"]:
        raise ValueError("cache monoid mismatch")
    acts = []
    for size, rows in data["acts"]:
        A = validate_act(monoid, rows) if size else empty_act(monoid)
        if A.size != size or canonical_form(A) != A:
            raise ValueError("cached act is not canonical")
        acts.append(A)
    if acts != sorted(acts, key=lambda A: (A.size, A.action)) or len({A.key for A in acts}) != len(acts):
        raise ValueError("cached acts unsorted or duplicated")
    if any(A.size > max_size for A in acts):
        raise ValueError("cached act too large")
    u = Universe(monoid, max_size, acts)
    if sorted(A.size for A in acts if A.size <= 1) != list(range(min(max_size, 1) + 1)):
        raise ValueError("trivial acts missing")
    for A in acts:
        for B in nontrivial_subacts(A):
            u.locate(restrict(A, B)[0])
        for chi in enumerate_congruences(A, self_check=False):
            u.locate(quotient(A, chi)[0])
    return u


class Workspace:
    """Fixtures loaded from a directory plus the built-in names."""

    def __init__(self, root=None, cache_dir=None):
        self.root = Path(root) if root is not None else Path.cwd()
        env = os.environ.get("SACT_CACHE_DIR")
        self.cache_dir = Path(cache_dir or env or self.root / ".sact-cache")
        self.fixtures = Fixtures()
        self._universes = {}
        self._enumerated = {}
        self.cache_events = []

    @classmethod
    def load(cls, root=None, cache_dir=None, strict=True):
        """Parse every ``*.sact`` file; with ``strict=False`` unreadable files are skipped."""
        ws = cls(root, cache_dir)
        for path in sorted(ws.root.glob("*.sact")):
            try:
                ws.fixtures.merge(parse_file(path))
            except ParseError:
                if strict:
                    raise
        return ws

    def add_file(self, path):
        self.fixtures.merge(parse_file(path))

    # monoids and acts

    def monoid(self, name) -> Monoid:
        d = self.fixtures.monoids.get(name)
        if d is not None:
            return build_monoid(d)
        if name in BUILTIN_MONOIDS:
            return BUILTIN_MONOIDS[name]()
        raise UnknownTarget(f"no monoid named {name!r}")

    def act(self, name) -> Act:
        d = self.fixtures.acts.get(name)
        if d is None:
            raise UnknownTarget(f"no act named {name!r}")
        return build_act(d, self.monoid(d.monoid))

    # universes

    def universe(self, monoid_name, max_size) -> Universe:
        monoid = self.monoid(monoid_name).canonical
        key = (monoid_key(monoid), max_size)
        hit = self._universes.get(key)
        if hit is None:
            hit = self._cached_universe(monoid, max_size, key)
            self._universes[key] = hit
        return hit

    def _cache_path(self, key):
        return self.cache_dir / f"universe-{key[0]}-{key[1]}.json"

    def _cached_universe(self, monoid, max_size, key) -> Universe:
        path = self._cache_path(key)
        if path.exists():
            try:
                with open(path, encoding="utf-8") as fh:
                    u = _load_universe(json.load(fh), monoid, max_size)
                self.cache_events.append(("hit", str(path)))
                return u
            except (ValueError, KeyError, TypeError, SactError, json.JSONDecodeError):
                self.cache_events.append(("invalid", str(path)))
        u = build_universe(monoid, max_size)
        self._write_cache(path, u)
        return u

    def _write_cache(self, path, u):
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(_dump_universe(u), fh, separators=(",", ":"))
            os.replace(tmp, path)
            self.cache_events.append(("write", str(path)))
        except OSError as exc:
            self.cache_events.append(("unwritable", f"{path}: {exc}"))

    def locate_act(self, u, A):
        """Universe index of a fixture act given over any labelling of the monoid."""
        C = to_canonical_monoid(A)
        if C.monoid.table != u.monoid.table:
            raise UnknownTarget("act is over a different monoid than the universe")
        try:
            return u.locate(C)[0]
        except KeyError:
            raise UnknownTarget(f"act of size {A.size} exceeds the universe size {u.max_size}") from None

    def _act_index(self, u, name):
        if name in self.fixtures.acts:
            return self.locate_act(u, self.act(name))
        try:
            return u.index_of_name(name)
        except KeyError:
            raise UnknownTarget(f"no act named {name!r} in the universe") from None

    # classes, radicals, torsion pairs

    def act_class(self, name, u):
        if name in ("trivial", "trivials"):
            return trivial_class(u)
        if name == "all":
            return all_class(u)
        d = self.fixtures.classes.get(name)
        if d is None:
            raise UnknownTarget(f"no class named {name!r}")
        if d.kind == "predicate":
            pred = PREDICATES.get(d.items[0])
            if pred is None:
                raise UnknownTarget(f"unknown predicate {d.items[0]!r}")
            return make_class(u, [i for i, A in enumerate(u.acts) if pred(A)], name)
        return make_class(u, [self._act_index(u, a) for a in d.items], name)

    def enumerated(self, u, filter):
        key = (id(u), filter)
        if key not in self._enumerated:
            self._enumerated[key] = enumerate_radicals(u, filter)
        return self._enumerated[key]

    def radical(self, name, u):
        if name == "delta":
            return delta_radical(u)
        if name == "nabla":
            return nabla_radical(u)
        m = _ENUMERATED.match(name)
        if m and name not in self.fixtures.radicals:
            found = self.enumerated(u, m.group(1))
            k = int(m.group(2))
            if k >= len(found):
                raise UnknownTarget(f"only {len(found)} {m.group(1)} radicals exist")
            return found[k]
        d = self.fixtures.radicals.get(name)
        if d is None:
            raise UnknownTarget(f"no radical named {name!r}")
        return self.build_radical(d, u)

    def radical_universe(self, name):
        d = self.fixtures.radicals.get(name)
        return None if d is None else self.universe(d.monoid, d.max_size)

    def build_radical(self, d, u=None):
        if u is None:
            u = self.universe(d.monoid, d.max_size)
        elif (u.monoid.table, u.max_size) != (self.monoid(d.monoid).canonical.table, d.max_size):
            raise UnknownTarget(f"radical {d.name!r} is defined over {d.monoid}:{d.max_size}")
        vals = [None] * len(u)
        for act_name, blocks, line in d.entries:
            try:
                i = u.index_of_name(act_name)
            except KeyError:
                raise ParseError(f"no universe act named {act_name!r}", line) from None
            if vals[i] is not None:
                raise ParseError(f"act {act_name!r} listed twice", line)
            try:
                vals[i] = make_congruence(u.acts[i], blocks)
            except SactError as exc:
                raise ParseError(f"{act_name}: {exc}", line) from None
        missing = [u.name(i) for i, v in enumerate(vals) if v is None]
        if missing:
            raise ParseError(f"radical {d.name!r} has no value for {', '.join(missing)}", d.line)
        return make_radical(u, vals, d.name)

    def torsion_pair(self, name, u):
        m = _TAU.match(name)
        if m and name not in self.fixtures.torsion:
            found = enumerate_torsion_pairs(u)
            k = int(m.group(1))
            if k >= len(found):
                raise UnknownTarget(f"only {len(found)} torsion pairs exist")
            return found[k]
        d = self.fixtures.torsion.get(name)
        if d is None:
            raise UnknownTarget(f"no torsion pair named {name!r}")
        return make_pair(u, self.act_class(d.torsion, u), self.act_class(d.torsion_free, u), name)

