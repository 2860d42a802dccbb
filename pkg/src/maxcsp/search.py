"""Bounded exhaustive search for strict implementations.

Candidates are multisets of terms (a predicate from the source set applied
to a scope over primary and auxiliary variables).  They are tried in the
order: fewer auxiliaries, then fewer terms, then lexicographic order of the
sorted term indices.  Candidates that leave an auxiliary unused, or that
are not the least representative under renaming of auxiliaries, are skipped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import library
from .gadgets import StrictImplementation, Term, variable_names, verify
from .predicates import Predicate, PredicateError, canonical_set, is_trivial

__all__ = ["SearchBounds", "search", "MAX_AUX"]

MAX_AUX = 4


@dataclass(frozen=True)
class SearchBounds:
    max_aux: int = 1
    max_terms: int = 3

    def __post_init__(self):
        if self.max_aux < 0 or self.max_terms < 0:
            raise ValueError("search bounds must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "SearchBounds":
        aux, _, terms = text.partition(",")
        return cls(int(aux), int(terms))

    def __str__(self) -> str:
        return f"{self.max_aux},{self.max_terms}"


def _term_array(f: Predicate, scope: Sequence[int], nvars: int) -> np.ndarray:
    """The term's value at every assignment of ``nvars`` variables (C order)."""
    d = f.d
    grids = np.indices((d,) * nvars).reshape(nvars, -1)
    idx = np.zeros(grids.shape[1], dtype=np.int64)
    for v in scope:
        idx = idx * d + grids[v]
    return np.asarray(f.table, dtype=np.int16)[idx]


class _Space:
    def __init__(self, preds: Sequence[Predicate], k: int, n: int):
        self.k, self.n = k, n
        nvars = k + n
        self.terms: list[tuple[int, tuple[int, ...]]] = []
        for p, f in enumerate(preds):
            for scope in itertools.product(range(nvars), repeat=f.arity):
                self.terms.append((p, scope))
        self.index = {t: i for i, t in enumerate(self.terms)}
        self.arrays = [_term_array(preds[p], scope, nvars) for p, scope in self.terms]
        self.aux_mask = []
        for _, scope in self.terms:
            mask = 0
            for v in scope:
                if v >= k:
                    mask |= 1 << (v - k)
            self.aux_mask.append(mask)
        self.perms = []
        for perm in itertools.permutations(range(n)):
            if list(perm) == list(range(n)):
                continue
            ren = {v: v for v in range(k)}
            ren.update({k + a: k + b for a, b in enumerate(perm)})
            self.perms.append([self.index[(p, tuple(ren[v] for v in scope))] for p, scope in self.terms])

    def canonical(self, cand: Sequence[int]) -> bool:
        key = tuple(cand)
        return all(tuple(sorted(m[i] for i in cand)) >= key for m in self.perms)


def search(preds: Sequence[Predicate], target: Predicate, max_aux: int = 1, max_terms: int = 3,
           names: dict[Predicate, str] | None = None) -> StrictImplementation | None:
    """First implementation of ``target`` from ``preds`` within the bounds, or None."""
    if is_trivial(target):
        raise PredicateError("search target must be non-trivial")
    if max_aux < 0 or max_terms < 0:
        raise ValueError("search bounds must be non-negative")
    if max_aux > MAX_AUX:
        raise ValueError(f"at most {MAX_AUX} auxiliary variables")
    preds = canonical_set(preds)
    if not preds:
        return None
    if any(f.d != target.d for f in preds):
        raise PredicateError("source predicates and target must share a domain")
    d, k = target.d, target.arity
    goal = np.asarray(target.table, dtype=np.int16)
    full = (1 << 0)

    for n in range(max_aux + 1):
        space = _Space(preds, k, n)
        full = (1 << n) - 1
        width = d**n
        for size in range(1, max_terms + 1):
            for cand in itertools.combinations_with_replacement(range(len(space.terms)), size):
                mask = 0
                for i in cand:
                    mask |= space.aux_mask[i]
                if mask != full or not space.canonical(cand):
                    continue
                total = np.sum([space.arrays[i] for i in cand], axis=0)
                profile = total.reshape(-1, width).max(axis=1)
                shift = profile - goal
                if shift.min() == shift.max() and shift[0] >= 0:
                    return _build(preds, space, cand, target, int(shift[0]) + 1, names)
    return None


def _build(preds, space, cand, target, alpha, names) -> StrictImplementation:
    k, n = space.k, space.n
    var = variable_names(k) + variable_names(n, "z")
    terms = []
    for i in cand:
        p, scope = space.terms[i]
        f = preds[p]
        label = (names or {}).get(f) or library.name_of(f)
        terms.append(Term(f, tuple(var[v] for v in scope), label))
    impl = StrictImplementation(target, alpha, tuple(var[:k]), tuple(var[k:]), tuple(terms), library.name_of(target))
    assert verify(impl), "search produced an implementation that fails verification"
    return impl
