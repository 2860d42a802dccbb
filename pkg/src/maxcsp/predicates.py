"""Truth-table predicates over the finite domain {0, ..., d-1}.

A predicate of arity m stores d**m bits.  The tuple (a1, ..., am) lives at
index sum(ai * d**(m-1-i)), so the first argument is the most significant
digit and a binary predicate prints as its matrix, row x and column y.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Predicate",
    "PredicateError",
    "parse_predicate",
    "evaluate",
    "is_trivial",
    "is_irreflexive",
    "diagonal_support",
    "unary",
    "domain_of",
    "canonical_set",
]


class PredicateError(ValueError):
    pass


def _int_log(count: int, base: int) -> int | None:
    m, power = 0, 1
    while power < count:
        power *= base
        m += 1
    return m if power == count else None


@dataclass(frozen=True)
class Predicate:
    d: int
    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        # one-element domains only arise as cores; the parser rejects them
        if self.d < 1:
            raise PredicateError(f"domain size must be positive, got {self.d}")
        if self.arity < 1:
            raise PredicateError(f"arity must be at least 1, got {self.arity}")
        table = tuple(int(b) for b in self.table)
        if len(table) != self.d**self.arity:
            raise PredicateError(
                f"table has {len(table)} entries, expected {self.d}**{self.arity}"
            )
        if any(b not in (0, 1) for b in table):
            raise PredicateError("table entries must be 0 or 1")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_function(cls, d: int, arity: int, fn) -> "Predicate":
        return cls(d, arity, tuple(int(bool(fn(*t))) for t in itertools.product(range(d), repeat=arity)))

    @classmethod
    def from_support(cls, d: int, arity: int, support: Iterable[Sequence[int]]) -> "Predicate":
        bits = [0] * d**arity
        for t in support:
            bits[index_of(d, t)] = 1
        return cls(d, arity, tuple(bits))

    def __call__(self, *args: int) -> int:
        return self.table[self.index(args)]

    def index(self, t: Sequence[int]) -> int:
        if len(t) != self.arity:
            raise PredicateError(f"expected {self.arity} arguments, got {len(t)}")
        return index_of(self.d, t)

    def tuples(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.d), repeat=self.arity)

    def support(self) -> list[tuple[int, ...]]:
        return [t for t, b in zip(self.tuples(), self.table) if b]

    def serialize(self) -> str:
        s = "".join(map(str, self.table))
        return "/".join(s[i : i + self.d] for i in range(0, len(s), self.d))

    def __str__(self) -> str:
        return self.serialize()

    def transpose(self) -> "Predicate":
        """Swap the two arguments of a binary predicate."""
        if self.arity != 2:
            raise PredicateError("transpose needs a binary predicate")
        return Predicate.from_function(self.d, 2, lambda x, y: self(y, x))

    def rename(self, sigma: Sequence[int]) -> "Predicate":
        """Image of the predicate under the domain permutation ``sigma``."""
        out = [0] * len(self.table)
        for t in self.support():
            out[index_of(self.d, [sigma[a] for a in t])] = 1
        return Predicate(self.d, self.arity, tuple(out))

    def restrict(self, elements: Sequence[int]) -> "Predicate":
        """Restriction to ``elements``, renamed to 0..k-1 in the given order."""
        k = len(elements)
        return Predicate.from_function(k, self.arity, lambda *t: self(*(elements[a] for a in t)))

    def complement(self) -> "Predicate":
        return Predicate(self.d, self.arity, tuple(1 - b for b in self.table))


def index_of(d: int, t: Sequence[int]) -> int:
    idx = 0
    for a in t:
        if not 0 <= a < d:
            raise PredicateError(f"value {a} outside domain 0..{d - 1}")
        idx = idx * d + a
    return idx


def parse_predicate(text: str, domain_size: int) -> Predicate:
    """Parse a row-major 0/1 matrix such as ``"011/101/110"``.

    Rows may be separated by ``/`` or newlines; other whitespace is ignored.
    The arity is inferred from the number of bits.
    """
    if domain_size < 2:
        raise PredicateError(f"domain size must be at least 2, got {domain_size}")
    bits = re.sub(r"[\s/]", "", text)
    bad = set(bits) - {"0", "1"}
    if bad:
        raise PredicateError(f"illegal characters in predicate text: {''.join(sorted(bad))!r}")
    if not bits:
        raise PredicateError("empty predicate text")
    m = _int_log(len(bits), domain_size)
    if m is None or m < 1:
        raise PredicateError(f"{len(bits)} bits is not a power of {domain_size}")
    return Predicate(domain_size, m, tuple(int(c) for c in bits))


def evaluate(f: Predicate, t: Sequence[int]) -> int:
    return f.table[f.index(t)]


def is_trivial(f: Predicate) -> bool:
    return not any(f.table)


def is_irreflexive(f: Predicate) -> bool:
    return not diagonal_support(f)


def diagonal_support(f: Predicate) -> frozenset[int]:
    return frozenset(a for a in range(f.d) if f(*([a] * f.arity)))


def unary(support: Iterable[int], d: int) -> Predicate:
    s = set(support)
    return Predicate.from_function(d, 1, lambda x: x in s)


def domain_of(preds: Sequence[Predicate]) -> int:
    """Common domain size of a non-empty predicate collection."""
    if not preds:
        raise PredicateError("empty predicate set")
    sizes = {f.d for f in preds}
    if len(sizes) != 1:
        raise PredicateError(f"mixed domain sizes {sorted(sizes)}")
    return sizes.pop()


def canonical_set(preds: Iterable[Predicate]) -> tuple[Predicate, ...]:
    """Deduplicated predicates in a stable order (arity, then table)."""
    return tuple(sorted(set(preds), key=lambda f: (f.arity, f.table)))
