"""Max-CSP over two- and three-element domains: predicates, supermodularity
on chains, cores, strict implementations, the PO / APX-complete classifier
and an exact solver."""

from .chains import Chain, find_supermodular_chain, is_supermodular_on_chain
from .classifier import Classification, Verdict, classify, classify_boolean, hardness_certificate
from .gadgets import StrictImplementation, Term, compose, verify
from .morphisms import UnaryMap, compute_core, is_core
from .predicates import Predicate, parse_predicate
from .search import search
from .solver import Instance, solve_exact

__all__ = [
    "Chain", "find_supermodular_chain", "is_supermodular_on_chain",
    "Classification", "Verdict", "classify", "classify_boolean", "hardness_certificate",
    "StrictImplementation", "Term", "compose", "verify",
    "UnaryMap", "compute_core", "is_core",
    "Predicate", "parse_predicate", "search", "Instance", "solve_exact",
]

__version__ = "0.1.0"
