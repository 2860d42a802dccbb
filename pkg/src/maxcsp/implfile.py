"""Text format for strict implementations.

One implementation reads::

    domain: 3              # optional, inferred from the target matrix
    target: 011/101/110    # matrix or library name
    alpha: 3
    primary: x y
    aux: z
    f4 = 011/101/000       # local matrix definitions
    terms:
      f4(z,x)
      f4(z,y) + f4(x,y)
      f4(y,x)
    core: [0,1,2]->[0,0,1] 00/10     # optional annotation

Header items may also be separated by ``;`` on one line.  A corpus file
holds several such blocks, each opened by a ``[name]`` line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import library
from .gadgets import StrictImplementation, Term
from .morphisms import UnaryMap, parse_map
from .predicates import Predicate, PredicateError, parse_predicate

__all__ = ["FormatError", "ParsedBlock", "parse_implementation", "parse_blocks", "format_implementation"]


class FormatError(ValueError):
    pass


_TERM = re.compile(r"([A-Za-z_][\w.{},]*?|[01/]+)\(([^()]*)\)")
_KEYS = ("domain", "target", "alpha", "primary", "aux", "terms", "core", "source", "name")


@dataclass(frozen=True)
class ParsedBlock:
    name: str | None
    implementation: StrictImplementation
    source: str | None = None
    core_map: UnaryMap | None = None
    core_matrix: Predicate | None = None


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        raw = raw.split("#", 1)[0].strip()
        out.extend(p.strip() for p in raw.split(";") if p.strip())
    return out


def _infer_domain(token: str) -> int | None:
    if re.fullmatch(r"[01/\s]+", token) and "/" in token:
        return len(token.split("/")[0].strip())
    return None


def _resolve(token: str, d: int, local: dict[str, Predicate]) -> Predicate:
    if token in local:
        return local[token]
    try:
        if re.fullmatch(r"[01/]+", token):
            return parse_predicate(token, d)
        return library.get(token, d)
    except PredicateError as exc:
        raise FormatError(str(exc)) from exc


def parse_implementation(text: str, name: str | None = None) -> ParsedBlock:
    fields: dict[str, str] = {}
    local_text: dict[str, str] = {}
    term_text: list[str] = []
    in_terms = False
    for line in _lines(text):
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if sep and key in _KEYS and "(" not in key:
            in_terms = key == "terms"
            if in_terms:
                if value.strip():
                    term_text.append(value)
            else:
                fields[key] = value.strip()
            continue
        m = re.fullmatch(r"([A-Za-z_][\w.]*)\s*=\s*([01/\s]+)", line)
        if m:
            local_text[m.group(1)] = m.group(2).replace(" ", "")
            in_terms = False
            continue
        if in_terms:
            term_text.append(line)
            continue
        raise FormatError(f"cannot read line {line!r}")

    for required in ("target", "alpha", "primary", "terms"):
        if required not in fields and not (required == "terms" and term_text):
            raise FormatError(f"missing '{required}:' entry")
    if "domain" in fields:
        try:
            d = int(fields["domain"])
        except ValueError:
            raise FormatError(f"bad domain {fields['domain']!r}") from None
    else:
        named = library.entries().get(fields["target"])
        d = _infer_domain(fields["target"]) or (named.predicate.d if named else None) or next(
            (_infer_domain(v) for v in local_text.values() if _infer_domain(v)), 3
        )
    try:
        local = {k: parse_predicate(v, d) for k, v in local_text.items()}
    except PredicateError as exc:
        raise FormatError(str(exc)) from exc
    target = _resolve(fields["target"], d, local)
    try:
        alpha = int(fields["alpha"])
    except ValueError:
        raise FormatError(f"alpha must be an integer, got {fields['alpha']!r}") from None
    primary = tuple(fields["primary"].replace(",", " ").split())
    aux = tuple(fields.get("aux", "").replace(",", " ").split())

    terms = []
    for chunk in term_text:
        found = _TERM.findall(chunk.replace(" ", ""))
        leftover = _TERM.sub("", chunk.replace(" ", "")).replace("+", "")
        if leftover or not found:
            raise FormatError(f"cannot read terms from {chunk!r}")
        for pname, args in found:
            pred = _resolve(pname, d, local)
            scope = tuple(a for a in args.split(",") if a)
            if len(scope) != pred.arity:
                raise FormatError(f"{pname}({args}) has {len(scope)} arguments, arity is {pred.arity}")
            terms.append(Term(pred, scope, pname))

    core_map = core_matrix = None
    if "core" in fields:
        parts = fields["core"].split()
        if len(parts) != 2:
            raise FormatError("core annotation must read '<map> <matrix>'")
        core_map = parse_map(parts[0])
        core_matrix = parse_predicate(parts[1], len(parts[1].split("/")[0]))

    target_name = fields["target"] if not re.fullmatch(r"[01/]+", fields["target"]) else library.name_of(target)
    impl = StrictImplementation(target, alpha, primary, aux, tuple(terms), target_name)
    return ParsedBlock(fields.get("name", name), impl, fields.get("source"), core_map, core_matrix)


def parse_blocks(text: str) -> list[ParsedBlock]:
    """Split a corpus file on ``[name]`` headers and parse every block."""
    blocks: list[ParsedBlock] = []
    name, body = None, []
    for raw in text.splitlines() + ["[]"]:
        m = re.fullmatch(r"\s*\[([^\]]*)\]\s*", raw)
        if m:
            if name is not None:
                try:
                    blocks.append(parse_implementation("\n".join(body), name))
                except (FormatError, PredicateError, ValueError) as exc:
                    raise FormatError(f"[{name}]: {exc}") from exc
            name, body = m.group(1), []
        else:
            body.append(raw)
    return blocks


def format_implementation(impl: StrictImplementation) -> str:
    """Serialize into the text format; parsing the result gives back ``impl``."""
    lines = [f"domain: {impl.d}", f"target: {impl.target.serialize()}", f"alpha: {impl.alpha}",
             f"primary: {' '.join(impl.primary)}"]
    if impl.auxiliary:
        lines.append(f"aux: {' '.join(impl.auxiliary)}")
    names: dict[Predicate, str] = {}
    for t in impl.terms:
        if t.predicate in names:
            continue
        lib = library.name_of(t.predicate)
        if lib is not None and library.get(lib, t.predicate.d) == t.predicate:
            names[t.predicate] = lib
        else:
            names[t.predicate] = f"p{sum(1 for n in names.values() if n.startswith('p') and n[1:].isdigit()) + 1}"
            lines.append(f"{names[t.predicate]} = {t.predicate.serialize()}")
    lines.append("terms:")
    lines.extend(f"  {names[t.predicate]}({','.join(t.scope)})" for t in impl.terms)
    return "\n".join(lines) + "\n"
