"""Named predicates: disequalities, equality, the dicut arc, unary
predicates u_S, the supermodular h-list and the gadget sources."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .predicates import Predicate, PredicateError, parse_predicate, unary

__all__ = ["Entry", "entries", "get", "resolve", "name_of", "unary_name", "all_unaries", "singletons"]

_UNARY = re.compile(r"^u_?\{?([0-9](?:,?[0-9])*)\}?$")


@dataclass(frozen=True)
class Entry:
    name: str
    predicate: Predicate
    description: str


@lru_cache(maxsize=None)
def entries() -> dict[str, Entry]:
    text = resources.files("maxcsp").joinpath("data/library.txt").read_text()
    out: dict[str, Entry] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, d, matrix, description = line.split(maxsplit=3)
        out[name] = Entry(name, parse_predicate(matrix, int(d)), description)
    return out


def unary_name(f: Predicate) -> str:
    return "u" + "".join(str(a) for a in range(f.d) if f(a))


def all_unaries(d: int) -> list[Predicate]:
    """Every non-trivial unary predicate on {0..d-1} (the set U_D)."""
    return [
        unary(s, d)
        for k in range(1, d + 1)
        for s in itertools.combinations(range(d), k)
    ]


def singletons(d: int) -> list[Predicate]:
    """The constant-pinning predicates u_{a} (the set C_D)."""
    return [unary([a], d) for a in range(d)]


def get(name: str, d: int | None = None) -> Predicate:
    """Look up one named predicate.

    Unary names such as ``u01`` or ``u_{0,1}`` are built on the fly and need
    ``d`` (default 3).
    """
    m = _UNARY.match(name)
    if m:
        d = 3 if d is None else d
        elems = [int(c) for c in m.group(1).replace(",", "")]
        if any(a >= d for a in elems):
            raise PredicateError(f"{name}: element outside domain 0..{d - 1}")
        return unary(elems, d)
    try:
        f = entries()[name].predicate
    except KeyError:
        raise PredicateError(f"unknown predicate name {name!r}") from None
    if d is not None and f.d != d:
        raise PredicateError(f"{name} lives on a domain of size {f.d}, not {d}")
    return f


def resolve(token: str, d: int | None = None) -> list[Predicate]:
    """Resolve a name, a set name (``U_D``, ``C_D``) or an inline matrix."""
    token = token.strip()
    if token in ("U_D", "C_D"):
        d = 3 if d is None else d
        return all_unaries(d) if token == "U_D" else singletons(d)
    if re.fullmatch(r"[01/\s]+", token):
        if d is None:
            rows = [r for r in re.split(r"[/\s]+", token) if r]
            d = len(rows[0])
        return [parse_predicate(token, d)]
    return [get(token, d)]


_PREFERRED = ("neq2", "neq3", "eq2", "eq3", "f_dicut", "leq3")


@lru_cache(maxsize=None)
def _reverse() -> dict[Predicate, str]:
    rev: dict[Predicate, str] = {}
    for name in _PREFERRED:
        rev[entries()[name].predicate] = name
    for name, e in entries().items():
        rev.setdefault(e.predicate, name)
    return rev


def name_of(f: Predicate) -> str | None:
    if f.arity == 1 and any(f.table):
        return unary_name(f)
    return _reverse().get(f)
