"""Independent oracles used across the suites.

These are written from the definitions without touching the package's
checkers, so agreement between the two is meaningful.
"""

import itertools
import random

import pytest

from maxcsp.predicates import Predicate


def supermodular_oracle(f: Predicate, order) -> bool:
    """f(a)+f(b) <= f(a meet b)+f(a join b) over every pair of tuples."""
    pos = {a: i for i, a in enumerate(order)}

    def lo(x, y):
        return x if pos[x] <= pos[y] else y

    def hi(x, y):
        return y if pos[x] <= pos[y] else x

    tuples = list(itertools.product(range(f.d), repeat=f.arity))
    value = dict(zip(tuples, f.table))
    for a in tuples:
        for b in tuples:
            meet = tuple(lo(x, y) for x, y in zip(a, b))
            join = tuple(hi(x, y) for x, y in zip(a, b))
            if value[a] + value[b] > value[meet] + value[join]:
                return False
    return True


def endomorphism_oracle(preds, image) -> bool:
    for f in preds:
        for t in itertools.product(range(f.d), repeat=f.arity):
            if f.table[_index(f.d, t)] and not f.table[_index(f.d, [image[a] for a in t])]:
                return False
    return True


def _index(d, t):
    i = 0
    for a in t:
        i = i * d + a
    return i


def all_binary(d=3):
    for bits in itertools.product((0, 1), repeat=d * d):
        yield Predicate(d, 2, bits)


def random_predicate(rng: random.Random, d: int, arity: int, nontrivial=True) -> Predicate:
    while True:
        bits = tuple(rng.randint(0, 1) for _ in range(d**arity))
        if any(bits) or not nontrivial:
            return Predicate(d, arity, bits)


@pytest.fixture
def rng():
    return random.Random(20240601)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the assertion still decides the test."""

    def record(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE[number] = (ok, detail)
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
