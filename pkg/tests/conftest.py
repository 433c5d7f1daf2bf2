import functools

import pytest

from sact.algebra import build_universe, enumerate_actions, enumerate_monoids, idempotent_monoid, trivial_monoid, validate_monoid, Act


@functools.lru_cache(maxsize=None)
def monoids_upto(order):
    out = []
    for k in range(1, order + 1):
        out.extend(enumerate_monoids(k))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def acts_of(monoid, n):
    return tuple(Act(monoid, n, rows) for rows in enumerate_actions(monoid, n))


@functools.lru_cache(maxsize=None)
def universe(name, k):
    m = {"S1": trivial_monoid(), "S2": idempotent_monoid(), "Z2": validate_monoid(((0, 1), (1, 0)), 0)}[name]
    return build_universe(m, k)


@pytest.fixture
def S1():
    return trivial_monoid()


@pytest.fixture
def S2():
    return idempotent_monoid()


@pytest.fixture
def Z2():
    return validate_monoid(((0, 1), (1, 0)), 0)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
