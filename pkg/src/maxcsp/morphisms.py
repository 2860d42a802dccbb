"""Endomorphisms, cores and retractions of small predicate sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .predicates import Predicate, PredicateError, domain_of

__all__ = [
    "UnaryMap",
    "EndomorphismCheck",
    "CoreResult",
    "MAX_DOMAIN",
    "is_endomorphism",
    "enumerate_endomorphisms",
    "is_core",
    "compute_core",
    "parse_map",
]

MAX_DOMAIN = 6


@dataclass(frozen=True)
class UnaryMap:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        if any(not 0 <= a < len(image) for a in image):
            raise ValueError(f"map {image} leaves the domain")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, d: int) -> "UnaryMap":
        return cls(tuple(range(d)))

    def __call__(self, a: int) -> int:
        return self.image[a]

    def apply(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.image[a] for a in t)

    def then(self, other: "UnaryMap") -> "UnaryMap":
        """``other`` after ``self``."""
        return UnaryMap(tuple(other.image[a] for a in self.image))

    @property
    def range(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.image)))

    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def is_idempotent(self) -> bool:
        return self.then(self) == self

    def __str__(self) -> str:
        d = len(self.image)
        return f"[{','.join(map(str, range(d)))}]->[{','.join(map(str, self.image))}]"


def parse_map(text: str) -> UnaryMap:
    """Read ``[0,1,2]->[0,1,1]`` (the left side must list 0..d-1)."""
    left, sep, right = text.replace(" ", "").partition("->")
    if not sep:
        raise ValueError(f"malformed map {text!r}")
    dom = [int(a) for a in left.strip("[]").split(",")]
    img = [int(a) for a in right.strip("[]").split(",")]
    if dom != list(range(len(dom))) or len(img) != len(dom):
        raise ValueError(f"malformed map {text!r}")
    return UnaryMap(tuple(img))


@dataclass(frozen=True)
class EndomorphismCheck:
    ok: bool
    witness: tuple[Predicate, tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class CoreResult:
    retraction: UnaryMap
    sub_domain: tuple[int, ...]
    restricted: tuple[Predicate, ...]

    @property
    def renaming(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self.sub_domain)}

    @property
    def size(self) -> int:
        return len(self.sub_domain)


def is_endomorphism(preds: Sequence[Predicate], pi: UnaryMap) -> EndomorphismCheck:
    d = domain_of(preds)
    if len(pi.image) != d:
        raise PredicateError(f"map on {len(pi.image)} elements, predicates on {d}")
    for f in preds:
        for t in f.support():
            if not f(*pi.apply(t)):
                return EndomorphismCheck(False, (f, t))
    return EndomorphismCheck(True)


def _guard(d: int) -> None:
    if d > MAX_DOMAIN:
        raise PredicateError(f"exhaustive map scan capped at d={MAX_DOMAIN}, got {d}")


def enumerate_endomorphisms(preds: Sequence[Predicate]) -> list[UnaryMap]:
    """All endomorphisms, in lexicographic order of their image sequence."""
    d = domain_of(preds)
    _guard(d)
    supports = [(f, f.support()) for f in preds]
    out = []
    for image in itertools.product(range(d), repeat=d):
        if all(f.table[_idx(d, image, t)] for f, sup in supports for t in sup):
            out.append(UnaryMap(image))
    return out


def _idx(d: int, image: Sequence[int], t: Sequence[int]) -> int:
    i = 0
    for a in t:
        i = i * d + image[a]
    return i


def _preference(pi: UnaryMap):
    # smaller image set first, then fewest moved positions, then lexicographic
    return len(pi.range), pi.range, sum(abs(b - a) for a, b in enumerate(pi.image)), pi.image


def is_core(preds: Sequence[Predicate]) -> tuple[bool, UnaryMap | None]:
    """Whether every endomorphism is a permutation; else the preferred
    non-injective one (same ordering as :func:`compute_core`)."""
    collapsing = [pi for pi in enumerate_endomorphisms(preds) if not pi.is_injective()]
    if not collapsing:
        return True, None
    return False, min(collapsing, key=_preference)


def _idempotent_power(pi: UnaryMap) -> UnaryMap:
    # pi permutes its own image, so some power of it fixes that image pointwise
    power = pi
    while not power.is_idempotent():
        power = power.then(pi)
    return power


def compute_core(preds: Sequence[Predicate]) -> CoreResult:
    """Restrict to the image of a minimum-image retraction.

    Among retractions onto minimum images the pick is: least image set, then
    least total displacement sum |pi(a) - a|, then least image sequence.
    """
    endos = enumerate_endomorphisms(preds)
    smallest = min(len(pi.range) for pi in endos)
    pi = min({_idempotent_power(p) for p in endos if len(p.range) == smallest}, key=_preference)
    sub = pi.range
    return CoreResult(pi, sub, tuple(f.restrict(sub) for f in preds))
