"""Strict alpha-implementations (gadgets).

An implementation of a target predicate g over primary variables Y, with
auxiliary variables Z and terms g_1(y_1) ... g_s(y_s), is valid when

    g(Y) + (alpha - 1) == max over Z of sum_i g_i(y_i)

for every assignment to Y.  Term sums are unweighted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .predicates import Predicate, unary

__all__ = [
    "GadgetError",
    "Term",
    "StrictImplementation",
    "Counterexample",
    "Verification",
    "ImplementationChain",
    "verify",
    "max_profile",
    "max_profile_exhaustive",
    "implied_alpha",
    "compose",
    "derive_pin",
    "derive_identify",
    "derive_project",
    "derive_diagonal",
    "derive_transpose",
    "derive_strip_all_one",
    "derive_unary_sum",
    "derive_unary_intersect",
    "variable_names",
]


class GadgetError(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    predicate: Predicate
    scope: tuple[str, ...]
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))
        if len(self.scope) != self.predicate.arity:
            raise GadgetError(
                f"term {self.label()} has {len(self.scope)} arguments, predicate arity {self.predicate.arity}"
            )

    def label(self) -> str:
        return f"{self.name or self.predicate.serialize()}({','.join(self.scope)})"


@dataclass(frozen=True)
class StrictImplementation:
    target: Predicate
    alpha: int
    primary: tuple[str, ...]
    auxiliary: tuple[str, ...]
    terms: tuple[Term, ...]
    target_name: str | None = None

    def __post_init__(self):
        for attr in ("primary", "auxiliary", "terms"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))

    @property
    def d(self) -> int:
        return self.target.d

    @property
    def sources(self) -> tuple[Predicate, ...]:
        """Distinct term predicates in order of first use."""
        return tuple(dict.fromkeys(t.predicate for t in self.terms))

    def describe(self) -> str:
        lhs = f"{self.target_name or 'g'}({','.join(self.primary)})"
        if self.alpha > 1:
            lhs += f" + {self.alpha - 1}"
        rhs = " + ".join(t.label() for t in self.terms)
        if self.auxiliary:
            rhs = f"max_{{{','.join(self.auxiliary)}}} [{rhs}]"
        return f"{lhs} = {rhs}"


@dataclass(frozen=True)
class Counterexample:
    primary: tuple[int, ...]
    achieved: int
    expected: int


@dataclass(frozen=True)
class Verification:
    ok: bool
    counterexample: Counterexample | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_well_formed(impl: StrictImplementation) -> None:
    if impl.alpha < 1:
        raise GadgetError(f"alpha must be a positive integer, got {impl.alpha}")
    if not impl.terms:
        raise GadgetError("an implementation needs at least one term")
    if len(impl.primary) != impl.target.arity:
        raise GadgetError(
            f"{len(impl.primary)} primary variables for a target of arity {impl.target.arity}"
        )
    names = list(impl.primary) + list(impl.auxiliary)
    if len(set(names)) != len(names):
        raise GadgetError("primary and auxiliary variables must be distinct")
    known = set(names)
    for t in impl.terms:
        if t.predicate.d != impl.d:
            raise GadgetError(f"term {t.label()} lives on {t.predicate.d} elements, target on {impl.d}")
        dangling = set(t.scope) - known
        if dangling:
            raise GadgetError(f"term {t.label()} uses undeclared variables {sorted(dangling)}")


def verify(impl: StrictImplementation) -> Verification:
    """Check the defining equality for every primary assignment.

    The maximum over auxiliaries is computed exactly by eliminating one
    auxiliary at a time (see :func:`max_profile`).
    """
    _check_well_formed(impl)
    profile = max_profile(impl.terms, impl.primary, impl.auxiliary, impl.d)
    for ys, best, g in zip(itertools.product(range(impl.d), repeat=len(impl.primary)), profile, impl.target.table):
        expected = g + impl.alpha - 1
        if best != expected:
            return Verification(False, Counterexample(ys, best, expected))
    return Verification(True)


def _factor(t: Term, d: int) -> tuple[tuple[str, ...], np.ndarray]:
    table = np.asarray(t.predicate.table, dtype=np.int64).reshape((d,) * t.predicate.arity)
    # repeated variables in a scope become a diagonal of the table
    names: list[str] = []
    for v in t.scope:
        if v not in names:
            names.append(v)
    letters = "".join(chr(97 + names.index(v)) for v in t.scope)
    if len(names) < len(t.scope):
        table = np.einsum(f"{letters}->{''.join(chr(97 + i) for i in range(len(names)))}", table)
    return tuple(names), table


def _combine(factors, d: int):
    names: list[str] = []
    for vs, _ in factors:
        names.extend(v for v in vs if v not in names)
    total = np.zeros((d,) * len(names), dtype=np.int64)
    for vs, arr in factors:
        order = sorted(range(len(vs)), key=lambda i: names.index(vs[i]))
        arr = arr.transpose(order)
        shape = [d if v in vs else 1 for v in names]
        total = total + arr.reshape(shape)
    return tuple(names), total


def max_profile(terms: Sequence[Term], primary: Sequence[str], auxiliary: Sequence[str], d: int) -> list[int]:
    """max over auxiliaries of the term sum, listed per primary assignment.

    Max-plus variable elimination: each auxiliary, taken in order of fewest
    neighbours, is summed out of the factors that mention it.
    """
    known = set(primary) | set(auxiliary)
    for t in terms:
        if not set(t.scope) <= known:
            raise GadgetError(f"term {t.label()} uses undeclared variables")
    factors = [_factor(t, d) for t in terms]
    remaining = list(auxiliary)
    while remaining:
        def width(z):
            return len({v for vs, _ in factors if z in vs for v in vs})
        z = min(remaining, key=width)
        remaining.remove(z)
        touching = [f for f in factors if z in f[0]]
        if not touching:
            continue
        factors = [f for f in factors if z not in f[0]]
        names, arr = _combine(touching, d)
        axis = names.index(z)
        factors.append((names[:axis] + names[axis + 1:], arr.max(axis=axis)))
    factors.append((tuple(primary), np.zeros((d,) * len(primary), dtype=np.int64)))
    names, arr = _combine(factors, d)
    arr = arr.transpose([names.index(v) for v in primary])
    return [int(x) for x in arr.reshape(-1)]


def max_profile_exhaustive(terms: Sequence[Term], primary: Sequence[str], auxiliary: Sequence[str],
                           d: int) -> list[int]:
    """Same as :func:`max_profile` by plain enumeration of every assignment."""
    out = []
    for ys in itertools.product(range(d), repeat=len(primary)):
        values = dict(zip(primary, ys))
        best = -1
        for zs in itertools.product(range(d), repeat=len(auxiliary)):
            values.update(zip(auxiliary, zs))
            best = max(best, sum(t.predicate(*(values[v] for v in t.scope)) for t in terms))
        out.append(best)
    return out


def implied_alpha(impl: StrictImplementation) -> int | None:
    """The alpha for which the terms implement the target, or None."""
    profile = max_profile(impl.terms, impl.primary, impl.auxiliary, impl.d)
    shifts = {p - g for p, g in zip(profile, impl.target.table)}
    if len(shifts) != 1:
        return None
    shift = shifts.pop()
    return shift + 1 if shift >= 0 else None


def _ensure_valid(impl: StrictImplementation) -> StrictImplementation:
    check = verify(impl)
    if not check:
        raise GadgetError(f"construction failed to verify: {check.counterexample}")
    return impl


def variable_names(k: int, prefix: str = "x") -> list[str]:
    if prefix == "x":
        if k == 1:
            return ["x"]
        if k == 2:
            return ["x", "y"]
    if prefix == "z" and k <= 2:
        return ["z", "w"][:k]
    return [f"{prefix}{i}" for i in range(1, k + 1)]


@dataclass(frozen=True)
class ImplementationChain:
    """Links in dependency order; a link may use earlier targets as terms.

    ``base`` lists the predicates the chain starts from.  When given, every
    term predicate must be a base predicate or an earlier target.
    """

    links: tuple[StrictImplementation, ...]
    base: tuple[Predicate, ...] | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        if self.base is not None:
            object.__setattr__(self, "base", tuple(self.base))

    @property
    def target(self) -> Predicate:
        return self.links[-1].target


class _Fresh:
    def __init__(self, taken: Iterable[str]):
        self.taken = set(taken)
        self.n = 0

    def __call__(self) -> str:
        while True:
            self.n += 1
            name = f"a{self.n}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def compose(chain: ImplementationChain) -> StrictImplementation:
    """Flatten a chain into one implementation of its final target.

    Each term whose predicate is an earlier target is replaced by a copy of
    that target's (already flattened) implementation with fresh auxiliaries;
    alpha - 1 adds up over all substitutions.
    """
    if not chain.links:
        raise GadgetError("empty chain")
    base = set(chain.base) if chain.base is not None else None
    flat: list[StrictImplementation] = []
    for i, link in enumerate(chain.links):
        check = verify(link)
        if not check:
            raise GadgetError(f"link {i} does not verify: {check.counterexample}")
        earlier = {}
        for j, prev in enumerate(chain.links[:i]):
            earlier[prev.target] = j
        later = {l.target for l in chain.links[i:]}
        fresh = _Fresh(list(link.primary) + list(link.auxiliary))
        terms: list[Term] = []
        aux = list(link.auxiliary)
        shift = link.alpha - 1
        for term in link.terms:
            p = term.predicate
            if base is not None and p in base:
                terms.append(term)
                continue
            if p in earlier:
                sub = flat[earlier[p]]
                mapping = dict(zip(sub.primary, term.scope))
                for z in sub.auxiliary:
                    mapping[z] = fresh()
                    aux.append(mapping[z])
                terms.extend(Term(t.predicate, tuple(mapping[v] for v in t.scope), t.name) for t in sub.terms)
                shift += sub.alpha - 1
            elif p in later:
                raise GadgetError(f"link {i} depends on a target that is only derived later (cycle)")
            elif base is not None:
                raise GadgetError(f"link {i} uses predicate {p} outside the base set")
            else:
                terms.append(term)
        flat.append(StrictImplementation(link.target, shift + 1, link.primary, tuple(aux), tuple(terms), link.target_name))
    return _ensure_valid(flat[-1])


def derive_pin(f: Predicate, positions: Sequence[int], constants: Sequence[int]) -> StrictImplementation:
    """Fix the arguments at ``positions`` to ``constants`` using singleton unaries.

    The result implements the pinned predicate with alpha = len(positions) + 1.
    """
    positions = list(positions)
    if not positions:
        raise GadgetError("nothing to pin")
    if len(positions) != len(constants):
        raise GadgetError("positions and constants differ in length")
    if len(set(positions)) != len(positions) or any(not 0 <= p < f.arity for p in positions):
        raise GadgetError("pinned positions must be distinct argument indices")
    if len(positions) >= f.arity:
        raise GadgetError("at least one argument must stay free")
    if any(not 0 <= c < f.d for c in constants):
        raise GadgetError("pinned constant outside the domain")
    free = [p for p in range(f.arity) if p not in positions]
    primary = variable_names(len(free))
    aux = variable_names(len(positions), "z")
    scope = [""] * f.arity
    for p, v in zip(free, primary):
        scope[p] = v
    for p, z in zip(positions, aux):
        scope[p] = z
    pins = dict(zip(positions, constants))

    def pinned(*xs):
        t = [0] * f.arity
        for p, x in zip(free, xs):
            t[p] = x
        for p, c in pins.items():
            t[p] = c
        return f(*t)

    target = Predicate.from_function(f.d, len(free), pinned)
    terms = [Term(f, tuple(scope))]
    terms += [Term(unary([c], f.d), (z,)) for z, c in zip(aux, constants)]
    return _ensure_valid(StrictImplementation(target, len(positions) + 1, tuple(primary), tuple(aux), tuple(terms)))


def derive_identify(f: Predicate, i: int, j: int) -> StrictImplementation:
    """Merge argument ``j`` into argument ``i`` (alpha = 1)."""
    if f.arity < 2:
        raise GadgetError("identification needs arity at least 2")
    if i == j or not (0 <= i < f.arity and 0 <= j < f.arity):
        raise GadgetError("need two distinct argument positions")
    keep = [p for p in range(f.arity) if p != j]
    primary = variable_names(len(keep))
    var_of = dict(zip(keep, primary))
    var_of[j] = var_of[i]
    scope = tuple(var_of[p] for p in range(f.arity))

    def merged(*xs):
        vals = dict(zip(keep, xs))
        vals[j] = vals[i]
        return f(*(vals[p] for p in range(f.arity)))

    target = Predicate.from_function(f.d, len(keep), merged)
    return _ensure_valid(StrictImplementation(target, 1, tuple(primary), (), (Term(f, scope),)))


def derive_diagonal(f: Predicate) -> StrictImplementation:
    """u_S(x) = f(x, ..., x) where S is the diagonal support (alpha = 1)."""
    target = Predicate.from_function(f.d, 1, lambda x: f(*([x] * f.arity)))
    return _ensure_valid(StrictImplementation(target, 1, ("x",), (), (Term(f, ("x",) * f.arity),)))


def derive_project(f: Predicate, position: int) -> StrictImplementation:
    """Existentially project out one argument (alpha = 1, one auxiliary)."""
    if f.arity < 2:
        raise GadgetError("projection needs arity at least 2")
    if not 0 <= position < f.arity:
        raise GadgetError(f"position {position} out of range")
    keep = [p for p in range(f.arity) if p != position]
    primary = variable_names(len(keep))
    scope = [""] * f.arity
    for p, v in zip(keep, primary):
        scope[p] = v
    scope[position] = "z"

    def projected(*xs):
        t = [0] * f.arity
        for p, x in zip(keep, xs):
            t[p] = x
        best = 0
        for v in range(f.d):
            t[position] = v
            best = max(best, f(*t))
        return best

    target = Predicate.from_function(f.d, len(keep), projected)
    return _ensure_valid(StrictImplementation(target, 1, tuple(primary), ("z",), (Term(f, tuple(scope)),)))


def derive_transpose(f: Predicate) -> StrictImplementation:
    """f'(x, y) = f(y, x) (alpha = 1)."""
    return _ensure_valid(StrictImplementation(f.transpose(), 1, ("x", "y"), (), (Term(f, ("y", "x")),)))


def derive_strip_all_one(g: Predicate, side: str, a: int) -> StrictImplementation:
    """Zero an all-one column (or row) ``a`` with u_{D - {a}} (alpha = 2)."""
    if g.arity != 2:
        raise GadgetError("all-one stripping needs a binary predicate")
    if side not in ("row", "column"):
        raise GadgetError("side must be 'row' or 'column'")
    if not 0 <= a < g.d:
        raise GadgetError(f"value {a} outside the domain")
    if side == "column":
        line = [g(x, a) for x in range(g.d)]
        target = Predicate.from_function(g.d, 2, lambda x, y: 0 if y == a else g(x, y))
        var = "y"
    else:
        line = [g(a, y) for y in range(g.d)]
        target = Predicate.from_function(g.d, 2, lambda x, y: 0 if x == a else g(x, y))
        var = "x"
    if not all(line):
        raise GadgetError(f"{side} {a} of {g} is not all ones")
    rest = unary([b for b in range(g.d) if b != a], g.d)
    terms = (Term(g, ("x", "y")), Term(rest, (var,)))
    return _ensure_valid(StrictImplementation(target, 2, ("x", "y"), (), terms))


def derive_unary_sum(s: Iterable[int], t: Iterable[int], d: int) -> StrictImplementation:
    """u_{S+T}(x) = u_S(x) + u_T(x) for disjoint non-empty S, T (alpha = 1)."""
    s, t = set(s), set(t)
    if not s or not t or s & t:
        raise GadgetError("need two disjoint non-empty sets")
    if not s | t <= set(range(d)):
        raise GadgetError("sets must lie inside the domain")
    terms = (Term(unary(s, d), ("x",)), Term(unary(t, d), ("x",)))
    return _ensure_valid(StrictImplementation(unary(s | t, d), 1, ("x",), (), terms))


def derive_unary_intersect(s1: Iterable[int], s2: Iterable[int], d: int) -> StrictImplementation:
    """u_{S1 & S2}(x) + 1 = u_{S1}(x) + u_{S2}(x) when S1 | S2 is the whole domain."""
    s1, s2 = set(s1), set(s2)
    if s1 | s2 != set(range(d)) or not s1 & s2 or s1 <= s2 or s2 <= s1:
        raise GadgetError("need overlapping, incomparable sets covering the domain")
    terms = (Term(unary(s1, d), ("x",)), Term(unary(s2, d), ("x",)))
    return _ensure_valid(StrictImplementation(unary(s1 & s2, d), 2, ("x",), (), terms))

