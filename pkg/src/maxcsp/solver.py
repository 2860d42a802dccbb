"""Weighted Max-CSP instances, an exact brute-force optimum and the random baseline."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import library
from .predicates import Predicate, PredicateError

__all__ = [
    "Constraint",
    "Instance",
    "SolveResult",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "evaluate_assignment",
    "solve_exact",
    "expected_random_value",
    "parse_instance",
    "format_instance",
]

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Constraint:
    predicate: Predicate
    scope: tuple[int, ...]
    weight: int = 1
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))
        if len(self.scope) != self.predicate.arity:
            raise PredicateError(f"scope {self.scope} does not match arity {self.predicate.arity}")
        if self.weight < 1:
            raise PredicateError(f"weights must be positive integers, got {self.weight}")


@dataclass(frozen=True)
class Instance:
    d: int
    n: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.d < 1 or self.n < 0:
            raise PredicateError("need d >= 1 and n >= 0")
        for c in self.constraints:
            if c.predicate.d != self.d:
                raise PredicateError(f"constraint on {c.predicate.d} elements in a d={self.d} instance")
            if any(not 0 <= v < self.n for v in c.scope):
                raise PredicateError(f"scope {c.scope} uses a variable outside x0..x{self.n - 1}")

    @property
    def total_weight(self) -> int:
        return sum(c.weight for c in self.constraints)

    def scaled(self, factor: int) -> "Instance":
        return Instance(self.d, self.n, tuple(
            Constraint(c.predicate, c.scope, c.weight * factor, c.name) for c in self.constraints))


@dataclass(frozen=True)
class SolveResult:
    optimum: int
    argmax: tuple[int, ...]
    evaluations: int


def evaluate_assignment(inst: Instance, a: Sequence[int]) -> int:
    if len(a) != inst.n:
        raise PredicateError(f"assignment of length {len(a)} for {inst.n} variables")
    if any(not 0 <= x < inst.d for x in a):
        raise PredicateError("assignment value outside the domain")
    return sum(c.weight * c.predicate(*(a[v] for v in c.scope)) for c in inst.constraints)


def _objective(inst: Instance) -> np.ndarray:
    """The objective at every assignment, as an array of shape (d,)*n."""
    d, n = inst.d, inst.n
    total = np.zeros((d,) * n, dtype=np.int64)
    for c in inst.constraints:
        table = np.asarray(c.predicate.table, dtype=np.int64).reshape((d,) * c.predicate.arity)
        # one einsum subscript per distinct variable, so repeats read the diagonal
        letters = "".join(chr(97 + v) if v < 26 else chr(65 + v - 26) for v in c.scope)
        distinct = sorted(set(c.scope))
        out = "".join(chr(97 + v) if v < 26 else chr(65 + v - 26) for v in distinct)
        values = np.einsum(f"{letters}->{out}", table)
        shape = [d if v in distinct else 1 for v in range(n)]
        total += c.weight * values.reshape(shape)
    return total


def solve_exact(inst: Instance, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Maximum over all d^n assignments; ties go to the lexicographically least."""
    count = inst.d**inst.n
    if count > budget:
        raise BudgetExceeded(f"{inst.d}^{inst.n} = {count} assignments exceeds the budget {budget}")
    if inst.n > 52:
        raise BudgetExceeded("too many variables")
    values = _objective(inst).reshape(-1)
    # C order enumerates assignments lexicographically; argmax takes the first
    best = int(np.argmax(values))
    argmax = tuple(int(x) for x in np.unravel_index(best, (inst.d,) * inst.n)) if inst.n else ()
    return SolveResult(int(values[best]), argmax, count)


def expected_random_value(inst: Instance) -> Fraction:
    """Expected objective under a uniformly random assignment."""
    total = Fraction(0)
    for c in inst.constraints:
        distinct = sorted(set(c.scope))
        hits = 0
        for t in np.ndindex(*((inst.d,) * len(distinct))):
            val = dict(zip(distinct, t))
            hits += c.predicate(*(val[v] for v in c.scope))
        total += Fraction(c.weight * hits, inst.d ** len(distinct))
    return total


_VAR = re.compile(r"x(\d+)$")
_LINE = re.compile(r"(\d+)\s+(\S+)\s*\(([^()]*)\)$")


def parse_instance(text: str) -> Instance:
    """Read the instance text format.

    ::

        domain 3
        vars 3
        1 neq3 (x0, x1)
        2 011/101/110 (x1, x2)
    """
    d = n = None
    constraints = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()
        if head[0] == "domain" and len(head) == 2:
            d = int(head[1])
            continue
        if head[0] == "vars" and len(head) == 2:
            n = int(head[1])
            continue
        m = _LINE.match(line)
        if not m:
            raise PredicateError(f"line {lineno}: cannot read {raw.strip()!r}")
        if d is None or n is None:
            raise PredicateError(f"line {lineno}: constraint before the 'domain' and 'vars' header")
        weight, token, args = m.groups()
        preds = library.resolve(token, d)
        if len(preds) != 1:
            raise PredicateError(f"line {lineno}: {token} names a set, not a predicate")
        scope = []
        for a in args.split(","):
            vm = _VAR.match(a.strip())
            if not vm:
                raise PredicateError(f"line {lineno}: bad variable {a.strip()!r}")
            scope.append(int(vm.group(1)))
        constraints.append(Constraint(preds[0], tuple(scope), int(weight), token))
    if d is None or n is None:
        raise PredicateError("missing 'domain' or 'vars' header")
    return Instance(d, n, tuple(constraints))


def format_instance(inst: Instance) -> str:
    lines = [f"domain {inst.d}", f"vars {inst.n}"]
    for c in inst.constraints:
        name = c.name or library.name_of(c.predicate) or c.predicate.serialize()
        lines.append(f"{c.weight} {name} ({', '.join(f'x{v}' for v in c.scope)})")
    return "\n".join(lines) + "\n"
