"""Chains (total orders) on the domain and supermodularity checking.

On a chain the lattice operations are min and max with respect to the
order, applied componentwise to tuples.  A predicate f is supermodular on the
chain when f(a) + f(b) <= f(a meet b) + f(a join b) for every pair of tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .predicates import Predicate, PredicateError, index_of

__all__ = [
    "Chain",
    "SupermodularityReport",
    "enumerate_chains",
    "chain_with_middle",
    "parse_chain",
    "is_supermodular_on_chain",
    "is_supermodular_via_binary_projections",
    "supermodular_chains",
    "find_supermodular_chain",
    "exclusive_chain_class",
]


@dataclass(frozen=True)
class Chain:
    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(self.order)
        if sorted(order) != list(range(len(order))):
            raise ValueError(f"{order} is not a permutation of 0..{len(order) - 1}")
        object.__setattr__(self, "order", order)

    @property
    def d(self) -> int:
        return len(self.order)

    @property
    def rank(self) -> tuple[int, ...]:
        r = [0] * self.d
        for pos, a in enumerate(self.order):
            r[a] = pos
        return tuple(r)

    def meet(self, a: int, b: int) -> int:
        return a if self.rank[a] <= self.rank[b] else b

    def join(self, a: int, b: int) -> int:
        return b if self.rank[a] <= self.rank[b] else a

    def meet_tuple(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.meet(x, y) for x, y in zip(a, b))

    def join_tuple(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.join(x, y) for x, y in zip(a, b))

    def dual(self) -> "Chain":
        return Chain(self.order[::-1])

    def canonical(self) -> "Chain":
        """The lexicographically smaller of the chain and its dual."""
        return min(self, self.dual(), key=lambda c: c.order)

    @property
    def middle(self) -> int:
        if self.d != 3:
            raise ValueError("middle element is defined for three-element chains")
        return self.order[1]

    def __str__(self) -> str:
        return "<".join(map(str, self.order))


@dataclass(frozen=True)
class SupermodularityReport:
    holds: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return self.holds


def enumerate_chains(d: int, dedup_duals: bool = False) -> list[Chain]:
    """All total orders on {0..d-1} in lexicographic order.

    With ``dedup_duals`` only the lexicographically smaller member of each
    dual pair is kept.
    """
    if d < 1:
        raise ValueError("domain size must be positive")
    chains = [Chain(p) for p in itertools.permutations(range(d))]
    if dedup_duals:
        chains = [c for c in chains if c.order <= c.order[::-1]]
    return chains


def chain_with_middle(i: int) -> Chain:
    """Canonical three-element chain with ``i`` in the middle, smaller end first."""
    if i not in (0, 1, 2):
        raise ValueError("middle element must be 0, 1 or 2")
    lo, hi = sorted({0, 1, 2} - {i})
    return Chain((lo, i, hi))


def parse_chain(text: str) -> Chain:
    try:
        return Chain(tuple(int(p) for p in text.replace(" ", "").split("<")))
    except ValueError as exc:
        raise ValueError(f"malformed chain {text!r}: expected e.g. 0<1<2") from exc


@lru_cache(maxsize=None)
def _pair_indices(order: tuple[int, ...], arity: int) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays MEET[i, j], JOIN[i, j] of the componentwise meet/join of
    the tuples with indices i and j."""
    d = len(order)
    rank = np.empty(d, dtype=np.int64)
    rank[list(order)] = np.arange(d)
    vals = np.array(list(itertools.product(range(d), repeat=arity)), dtype=np.int64).reshape(-1, arity)
    ra, rb = rank[vals][:, None, :], rank[vals][None, :, :]
    a, b = vals[:, None, :], vals[None, :, :]
    lo = np.where(ra <= rb, a, b)
    hi = np.where(ra <= rb, b, a)
    weights = d ** np.arange(arity - 1, -1, -1)
    meet = (lo * weights).sum(axis=-1)
    join = (hi * weights).sum(axis=-1)
    meet.setflags(write=False)
    join.setflags(write=False)
    return meet, join


def _check_domain(f: Predicate, c: Chain) -> None:
    if f.d != c.d:
        raise PredicateError(f"predicate on {f.d} elements, chain on {c.d}")


def is_supermodular_on_chain(f: Predicate, c: Chain) -> SupermodularityReport:
    """Exhaustive check over all d**(2m) pairs of tuples."""
    _check_domain(f, c)
    if f.arity == 1:
        return SupermodularityReport(True)
    t = np.asarray(f.table, dtype=np.int8)
    meet, join = _pair_indices(c.order, f.arity)
    bad = (t[:, None] + t[None, :]) > (t[meet] + t[join])
    if not bad.any():
        return SupermodularityReport(True)
    # bad is symmetric; report b as the least tuple taking part in a violation
    j, i = np.argwhere(bad)[0]
    tuples = list(f.tuples())
    return SupermodularityReport(False, (tuples[i], tuples[j]))


def _binary_projections(f: Predicate):
    """Yield (lift, binary predicate); lift(x, y) rebuilds the full tuple."""
    n = f.arity
    for i, j in itertools.combinations(range(n), 2):
        rest = [p for p in range(n) if p not in (i, j)]
        for consts in itertools.product(range(f.d), repeat=len(rest)):
            def full(x, y, consts=consts):
                t = [0] * n
                t[i], t[j] = x, y
                for p, v in zip(rest, consts):
                    t[p] = v
                return t
            table = tuple(f.table[index_of(f.d, full(x, y))] for x in range(f.d) for y in range(f.d))
            yield full, Predicate(f.d, 2, table)


def is_supermodular_via_binary_projections(f: Predicate, c: Chain) -> SupermodularityReport:
    """Check every binary predicate obtained by fixing all but two arguments.

    A predicate of arity >= 2 is supermodular on a chain exactly when all these
    binary projections are; a violation is lifted back to full tuples.
    """
    _check_domain(f, c)
    if f.arity < 2:
        raise PredicateError("binary projections need arity at least 2")
    for full, g in _binary_projections(f):
        rep = is_supermodular_on_chain(g, c)
        if not rep:
            a, b = rep.witness
            return SupermodularityReport(False, (tuple(full(*a)), tuple(full(*b))))
    return SupermodularityReport(True)


Checker = Callable[[Predicate, Chain], SupermodularityReport]


def _checked(f: Predicate, c: Chain, checker: Checker) -> bool:
    if f.arity == 1:
        return True
    return bool(checker(f, c))


def supermodular_chains(preds: Sequence[Predicate], dedup_duals: bool = True,
                        checker: Checker = is_supermodular_on_chain) -> list[Chain]:
    """Chains (in enumeration order) on which every predicate is supermodular."""
    if not preds:
        raise PredicateError("empty predicate set")
    d = preds[0].d
    return [c for c in enumerate_chains(d, dedup_duals)
            if all(_checked(f, c, checker) for f in preds)]


def find_supermodular_chain(preds: Sequence[Predicate],
                            checker: Checker = is_supermodular_on_chain) -> Chain | None:
    if not preds:
        raise PredicateError("empty predicate set")
    for c in enumerate_chains(preds[0].d, dedup_duals=True):
        if all(_checked(f, c, checker) for f in preds):
            return c
    return None


def exclusive_chain_class(f: Predicate) -> int | None:
    """The i with f supermodular on the chain with middle i and no other, else None."""
    if f.arity != 2 or f.d != 3:
        raise PredicateError("defined for binary predicates on three elements")
    hits = [i for i in range(3) if is_supermodular_on_chain(f, chain_with_middle(i))]
    return hits[0] if len(hits) == 1 else None
