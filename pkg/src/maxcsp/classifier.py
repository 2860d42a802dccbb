"""The PO / APX-complete decision for domains of two or three elements.

``classify`` reduces to the core and looks for a chain on which every core
predicate is supermodular.  ``hardness_certificate`` tries to back an
APX-complete verdict with a verified chain of strict implementations that
ends in a predicate already known to be hard.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .chains import Chain, find_supermodular_chain, is_supermodular_via_binary_projections
from .corpus import load_corpus
from .gadgets import (
    GadgetError,
    ImplementationChain,
    StrictImplementation,
    Term,
    derive_diagonal,
    derive_identify,
    derive_pin,
    derive_project,
    derive_strip_all_one,
    derive_transpose,
    derive_unary_intersect,
    derive_unary_sum,
    verify,
)
from .morphisms import CoreResult, UnaryMap, compute_core
from .predicates import Predicate, PredicateError, canonical_set, domain_of, is_trivial, unary
from .search import SearchBounds, search

__all__ = [
    "Verdict",
    "Classification",
    "HardnessCertificate",
    "ClassificationError",
    "classify",
    "classify_boolean",
    "hardness_certificate",
    "terminal_kind",
]


class ClassificationError(PredicateError):
    pass


class Verdict(enum.Enum):
    TRIVIAL = "trivial"
    PO = "PO"
    APX_COMPLETE = "APX-complete"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    core: CoreResult
    chain: Chain | None = None
    certificate: "HardnessCertificate | None" = None

    @property
    def po_trivial(self) -> bool:
        return self.verdict is Verdict.TRIVIAL

    @property
    def tractable(self) -> bool:
        return self.verdict is not Verdict.APX_COMPLETE


@dataclass(frozen=True)
class HardnessCertificate:
    """Implementations from ``base`` ending in a predicate known to be hard.

    ``base`` is the core (renamed onto 0..d'-1) plus, when ``with_constants``
    is set, the singleton unaries; a core may always be extended by them
    without changing its complexity.  ``kind`` is ``neq2``, ``neq3`` or
    ``two-element-core``; for the last one ``terminal_core`` holds the
    labelling onto the core and the 2x2 core matrix.
    """

    chain: ImplementationChain
    terminal: Predicate
    kind: str
    base: tuple[Predicate, ...]
    with_constants: bool
    bounds: SearchBounds
    terminal_core: tuple[UnaryMap, Predicate] | None = None

    @property
    def links(self) -> tuple[StrictImplementation, ...]:
        return self.chain.links


def _validate(preds: Sequence[Predicate]) -> tuple[Predicate, ...]:
    preds = tuple(preds)
    if not preds:
        raise ClassificationError("empty predicate set")
    d = domain_of(preds)
    if d not in (2, 3):
        raise ClassificationError(f"the dichotomy covers domains of size 2 or 3, got {d}")
    for f in preds:
        if is_trivial(f):
            raise ClassificationError(f"trivial predicate {f.serialize()} in the set")
    return preds


def classify(preds: Sequence[Predicate], certificate: bool = False,
             bounds: SearchBounds | None = None) -> Classification:
    """Compute the core and look for a supermodular chain on it."""
    preds = _validate(preds)
    core = compute_core(preds)
    if core.size == 1:
        return Classification(Verdict.TRIVIAL, core)
    restricted = canonical_set(core.restricted)
    chain = find_supermodular_chain(restricted, checker=is_supermodular_via_binary_projections)
    if chain is not None:
        return Classification(Verdict.PO, core, chain)
    cert = None
    if certificate:
        cert = _certify(core, bounds or SearchBounds())
    return Classification(Verdict.APX_COMPLETE, core, None, cert)


def classify_boolean(preds: Sequence[Predicate]) -> Classification:
    """``classify`` restricted to the two-element domain."""
    preds = tuple(preds)
    if preds and domain_of(preds) != 2:
        raise ClassificationError("classify_boolean needs predicates on two elements")
    return classify(preds)


def hardness_certificate(preds: Sequence[Predicate],
                         bounds: SearchBounds | None = None) -> HardnessCertificate | None:
    """Best-effort verified certificate for an APX-complete set, or None."""
    result = classify(preds)
    if result.verdict is not Verdict.APX_COMPLETE:
        raise ClassificationError(f"set is {result.verdict}, not APX-complete")
    return _certify(result.core, bounds or SearchBounds())


# terminals


def _neq(d: int) -> Predicate:
    return Predicate.from_function(d, 2, lambda x, y: int(x != y))


def terminal_kind(f: Predicate) -> tuple[str, tuple[UnaryMap, Predicate] | None] | None:
    """Why ``f`` alone is hard, or None.

    ``neq2``/``neq3`` when ``f`` is the disequality on its whole domain;
    ``two-element-core`` when ``f`` is binary and its core is a
    non-supermodular predicate on two elements.
    """
    if f.arity != 2 or is_trivial(f):
        return None
    if f.d in (2, 3) and f == _neq(f.d):
        return f"neq{f.d}", None
    core = compute_core([f])
    if core.size != 2:
        return None
    g = core.restricted[0]
    if find_supermodular_chain([g]) is not None:
        return None
    label = UnaryMap(tuple(core.renaming[core.retraction(a)] for a in range(f.d)))
    return "two-element-core", (label, g)


_terminal_cached = lru_cache(maxsize=4096)(terminal_kind)


# the pool of derivable predicates


@dataclass
class _Pool:
    base: tuple[Predicate, ...]
    links: dict[Predicate, StrictImplementation] = field(default_factory=dict)
    order: list[Predicate] = field(default_factory=list)

    def __post_init__(self):
        self.order = list(dict.fromkeys(self.base))

    def __contains__(self, f: Predicate) -> bool:
        return f in self.links or f in self.base

    def add(self, impl: StrictImplementation) -> bool:
        f = impl.target
        if is_trivial(f) or f in self or not verify(impl):
            return False
        if any(t.predicate not in self for t in impl.terms):
            return False
        self.links[f] = impl
        self.order.append(f)
        return True

    def chain_to(self, f: Predicate) -> ImplementationChain:
        done: list[StrictImplementation] = []
        seen: set[Predicate] = set()

        def visit(g: Predicate) -> None:
            if g in seen or g in self.base:
                return
            seen.add(g)
            impl = self.links[g]
            for t in impl.terms:
                visit(t.predicate)
            done.append(impl)

        visit(f)
        return ImplementationChain(tuple(done), self.base)


def _rename_impl(impl: StrictImplementation, sigma: Sequence[int], flip: bool) -> StrictImplementation:
    """Apply a domain permutation (and optionally swap every binary predicate)."""

    def move(f: Predicate, scope: tuple[str, ...]) -> tuple[Predicate, tuple[str, ...]]:
        g = f.rename(sigma)
        if flip and f.arity == 2:
            return g.transpose(), scope[::-1]
        return g, scope

    target, primary = move(impl.target, impl.primary)
    terms = tuple(Term(*move(t.predicate, t.scope), t.name) for t in impl.terms)
    return StrictImplementation(target, impl.alpha, primary, impl.auxiliary, terms, impl.target_name)


@lru_cache(maxsize=None)
def _corpus_variants(d: int) -> tuple[StrictImplementation, ...]:
    out: dict[tuple, StrictImplementation] = {}
    for block in load_corpus():
        impl = block.implementation
        if impl.d != d or any(t.predicate.arity > 2 for t in impl.terms) or impl.target.arity > 2:
            continue
        for sigma in itertools.permutations(range(d)):
            for flip in (False, True):
                v = _rename_impl(impl, sigma, flip)
                key = (v.target, frozenset(t.predicate for t in v.terms))
                out.setdefault(key, v)
    return tuple(out.values())


def _constructive_steps(f: Predicate, pool: _Pool, singletons: bool) -> Iterable[Callable[[], StrictImplementation]]:
    d = f.d
    if f.arity >= 2:
        for i, j in itertools.combinations(range(f.arity), 2):
            yield lambda i=i, j=j: derive_identify(f, i, j)
        for p in range(f.arity):
            yield lambda p=p: derive_project(f, p)
        yield lambda: derive_diagonal(f)
        if singletons:
            for p in range(f.arity):
                for c in range(d):
                    yield lambda p=p, c=c: derive_pin(f, [p], [c])
    if f.arity == 2:
        yield lambda: derive_transpose(f)
        for a in range(d):
            yield lambda a=a: derive_strip_all_one(f, "column", a)
            yield lambda a=a: derive_strip_all_one(f, "row", a)
    if f.arity == 1:
        s = {a for a in range(d) if f(a)}
        for g in list(pool.order):
            if g.arity != 1 or g == f:
                continue
            t = {a for a in range(d) if g(a)}
            yield lambda t=t: derive_unary_sum(s, t, d)
            yield lambda t=t: derive_unary_intersect(s, t, d)


_MAX_ROUNDS = 8
_MAX_POOL = 400


def _certify(core: CoreResult, bounds: SearchBounds) -> HardnessCertificate | None:
    preds = canonical_set(core.restricted)
    d = core.size
    consts = tuple(unary([a], d) for a in range(d))
    base = tuple(dict.fromkeys(preds + consts))
    pool = _Pool(base)
    variants = _corpus_variants(d)

    def best_terminal():
        # disequality terminals first, then shorter chains, then discovery order
        found = []
        for f in pool.order:
            kind = _terminal_cached(f)
            if kind is not None:
                found.append((kind[0] == "two-element-core", len(pool.chain_to(f).links), pool.order.index(f), f, kind))
        return min(found, key=lambda x: x[:3]) if found else None

    frontier = list(pool.order)
    for _ in range(_MAX_ROUNDS):
        best = best_terminal()
        if best is not None and not best[0]:
            break
        added: list[Predicate] = []
        for v in variants:
            if v.target not in pool and all(t.predicate in pool for t in v.terms):
                if pool.add(v):
                    added.append(v.target)
        for f in frontier:
            for step in _constructive_steps(f, pool, True):
                try:
                    impl = step()
                except GadgetError:
                    continue
                if pool.add(impl):
                    added.append(impl.target)
            if len(pool.order) > _MAX_POOL:
                break
        if not added or len(pool.order) > _MAX_POOL:
            break
        frontier = added

    best = best_terminal()
    if best is None or best[0]:
        found = _search_fallback(preds, consts, d, bounds)
        if found is not None and pool.add(found):
            best = best_terminal()
    if best is None:
        return None
    f, (kind, extra) = best[3], best[4]
    chain = pool.chain_to(f)
    return HardnessCertificate(chain, f, kind, base, True, bounds, extra)


def _search_fallback(preds, consts, d, bounds: SearchBounds) -> StrictImplementation | None:
    sources = [f for f in preds if f.arity <= 2]
    if not sources or len(sources) > 4 or bounds.max_terms == 0:
        return None
    targets = [_neq(d)]
    for a, b in itertools.permutations(range(d), 2):
        if d > 2:
            targets.append(Predicate.from_support(d, 2, [(a, b), (b, a)]))
        targets.append(Predicate.from_support(d, 2, [(a, b)]))
    for target in targets:
        if target in sources:
            continue
        impl = search(sources, target, bounds.max_aux, bounds.max_terms)
        if impl is not None:
            return impl
    return None
