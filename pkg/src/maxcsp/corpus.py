"""The embedded corpus of strict implementations and its verification."""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .chains import find_supermodular_chain
from .gadgets import Counterexample, GadgetError, StrictImplementation, verify
from .implfile import ParsedBlock, parse_blocks
from .morphisms import UnaryMap, is_core
from .predicates import Predicate

__all__ = [
    "EntryResult",
    "CorpusReport",
    "load_corpus",
    "verify_corpus",
    "check_core_annotation",
    "flip_target_bit",
    "shift_alpha",
]


@lru_cache(maxsize=None)
def _corpus_text() -> str:
    return resources.files("maxcsp").joinpath("data/corpus.txt").read_text()


def load_corpus() -> list[ParsedBlock]:
    return parse_blocks(_corpus_text())


def check_core_annotation(target: Predicate, label: UnaryMap | tuple[int, ...], core: Predicate) -> bool:
    """Check that ``core`` is a two-element, non-supermodular core of {target}.

    ``label`` sends each domain element to its class in the core, as in
    ``[0,1,2]->[0,0,1]``.  The target must map onto the core through the
    labelling, the core must embed back into the target, and the core must
    have no supermodular chain.
    """
    image = label.image if isinstance(label, UnaryMap) else tuple(label)
    k = core.d
    if any(not 0 <= c < k for c in image):
        return False
    forward = all(core(*(image[a] for a in t)) for t in target.support())
    back = any(
        all(target(*(emb[c] for c in t)) for t in core.support())
        for emb in itertools.permutations(range(target.d), k)
    )
    return forward and back and is_core([core])[0] and find_supermodular_chain([core]) is None


@dataclass(frozen=True)
class EntryResult:
    name: str
    source: str | None
    alpha: int
    ok: bool
    counterexample: Counterexample | None = None
    core_ok: bool | None = None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.ok and self.core_ok is not False


@dataclass(frozen=True)
class CorpusReport:
    entries: tuple[EntryResult, ...]

    @property
    def passed(self) -> int:
        return sum(e.passed for e in self.entries)

    @property
    def total(self) -> int:
        return len(self.entries)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total

    def summary(self) -> str:
        return f"{self.passed}/{self.total} implementations verified"


def _check(block: ParsedBlock) -> EntryResult:
    impl = block.implementation
    try:
        result = verify(impl)
    except GadgetError as exc:
        return EntryResult(block.name, block.source, impl.alpha, False, error=str(exc))
    core_ok = None
    if block.core_map is not None:
        core_ok = check_core_annotation(impl.target, block.core_map, block.core_matrix)
    return EntryResult(block.name, block.source, impl.alpha, result.ok, result.counterexample, core_ok)


def verify_corpus(blocks: list[ParsedBlock] | None = None) -> CorpusReport:
    """Verify every corpus entry; failures are reported, never raised."""
    if blocks is None:
        blocks = load_corpus()
    return CorpusReport(tuple(_check(b) for b in blocks))


def flip_target_bit(block: ParsedBlock, index: int) -> ParsedBlock:
    impl = block.implementation
    table = list(impl.target.table)
    table[index] ^= 1
    target = Predicate(impl.target.d, impl.target.arity, tuple(table))
    return dataclasses.replace(block, implementation=dataclasses.replace(impl, target=target))


def shift_alpha(block: ParsedBlock, delta: int) -> ParsedBlock:
    impl: StrictImplementation = block.implementation
    return dataclasses.replace(block, implementation=dataclasses.replace(impl, alpha=impl.alpha + delta))
