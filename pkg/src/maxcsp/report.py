"""Text, key:value and figure renderings of library results.

The CLI prints exactly what these functions return, so the golden tests
compare against them directly.
"""

from __future__ import annotations

from typing import Sequence

from . import library
from .chains import Chain, SupermodularityReport
from .classifier import Classification, HardnessCertificate, Verdict
from .corpus import CorpusReport
from .gadgets import StrictImplementation, Verification
from .implfile import format_implementation
from .morphisms import CoreResult
from .predicates import Predicate
from .solver import Instance, SolveResult, expected_random_value

__all__ = [
    "structured",
    "describe_predicate",
    "classification_lines",
    "supermodular_lines",
    "core_lines",
    "verification_lines",
    "search_lines",
    "solve_lines",
    "corpus_lines",
    "render",
    "plot_predicates",
    "plot_corpus",
]


def structured(pairs: Sequence[tuple[str, object]]) -> str:
    return "".join(f"{k}: {v}\n" for k, v in pairs)


def describe_predicate(f: Predicate) -> str:
    name = library.name_of(f)
    return f"{name} ({f.serialize()})" if name else f.serialize()


def _certificate_lines(cert: HardnessCertificate | None) -> list[tuple[str, object]]:
    if cert is None:
        return [("certificate", "none within budget")]
    out: list[tuple[str, object]] = [
        ("certificate", cert.kind),
        ("certificate_links", len(cert.links)),
        ("certificate_terminal", describe_predicate(cert.terminal)),
        ("certificate_constants", "yes" if cert.with_constants else "no"),
        ("certificate_budget", cert.bounds),
    ]
    for i, link in enumerate(cert.links, 1):
        out.append((f"link_{i}", f"alpha={link.alpha} {link.describe()}"))
    if cert.terminal_core is not None:
        label, g = cert.terminal_core
        out.append(("terminal_core", f"{label} {g.serialize()}"))
    return out


def classification_lines(c: Classification) -> list[tuple[str, object]]:
    core = c.core
    out: list[tuple[str, object]] = [
        ("verdict", c.verdict),
        ("po_trivial", "yes" if c.po_trivial else "no"),
        ("core_retraction", core.retraction),
        ("core_domain", ",".join(map(str, core.sub_domain))),
        ("core_size", core.size),
    ]
    if c.chain is not None:
        out.append(("chain", c.chain))
    if c.verdict is Verdict.APX_COMPLETE and c.certificate is not None:
        out.extend(_certificate_lines(c.certificate))
    return out


def supermodular_lines(f: Predicate, results: Sequence[tuple[Chain, SupermodularityReport]]) -> list[tuple[str, object]]:
    out: list[tuple[str, object]] = [("predicate", describe_predicate(f))]
    for chain, rep in results:
        status = "supermodular" if rep.holds else "not supermodular"
        if rep.witness is not None:
            a, b = rep.witness
            status += f" witness a={a} b={b}"
        out.append((f"chain {chain}", status))
    return out


def core_lines(preds: Sequence[Predicate], core: CoreResult) -> list[tuple[str, object]]:
    out: list[tuple[str, object]] = [
        ("retraction", core.retraction),
        ("domain", ",".join(map(str, core.sub_domain))),
        ("size", core.size),
    ]
    for f, g in zip(preds, core.restricted):
        out.append((f"restricted {describe_predicate(f)}", g.serialize()))
    return out


def verification_lines(impl: StrictImplementation, check: Verification) -> list[tuple[str, object]]:
    out: list[tuple[str, object]] = [("implementation", impl.describe()), ("alpha", impl.alpha),
                                     ("result", "valid" if check.ok else "invalid")]
    if check.counterexample is not None:
        ce = check.counterexample
        out.append(("counterexample", f"primary={ce.primary} max={ce.achieved} expected={ce.expected}"))
    return out


def search_lines(found: StrictImplementation | None, bounds) -> list[tuple[str, object]]:
    if found is None:
        return [("result", "none within budget"), ("budget", bounds)]
    return [("result", "found"), ("budget", bounds), ("alpha", found.alpha),
            ("auxiliary", len(found.auxiliary)), ("terms", len(found.terms)),
            ("implementation", found.describe())]


def solve_lines(inst: Instance, result: SolveResult) -> list[tuple[str, object]]:
    return [
        ("optimum", result.optimum),
        ("argmax", " ".join(map(str, result.argmax))),
        ("evaluations", result.evaluations),
        ("total_weight", inst.total_weight),
        ("random_expectation", expected_random_value(inst)),
    ]


def corpus_lines(report: CorpusReport, verbose: bool = True) -> list[tuple[str, object]]:
    out: list[tuple[str, object]] = []
    if verbose:
        for e in report.entries:
            status = "ok" if e.passed else "FAIL"
            extra = ""
            if e.core_ok is not None:
                extra = " core ok" if e.core_ok else " core FAIL"
            if e.error:
                extra += f" ({e.error})"
            elif e.counterexample is not None:
                extra += f" (primary={e.counterexample.primary})"
            out.append((e.name, f"{status} alpha={e.alpha}{extra}"))
    out.append(("summary", report.summary()))
    return out


def render(pairs: Sequence[tuple[str, object]], fmt: str = "text") -> str:
    """``structured`` gives key: value lines; ``text`` aligns the keys."""
    if fmt == "structured":
        return structured(pairs)
    width = max((len(k) for k, _ in pairs), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in pairs)


# figures


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_predicates(preds: Sequence[Predicate], path: str, titles: Sequence[str] | None = None) -> None:
    """Heatmaps of binary and unary truth tables, one panel per predicate."""
    plt = _pyplot()
    n = max(len(preds), 1)
    fig, axes = plt.subplots(1, n, figsize=(2.2 * n, 2.4), squeeze=False)
    for k, (ax, f) in enumerate(zip(axes[0], preds)):
        d = f.d
        if f.arity == 1:
            grid = [list(f.table)]
        elif f.arity == 2:
            grid = [list(f.table[i * d:(i + 1) * d]) for i in range(d)]
        else:
            grid = [list(f.table)]
        ax.imshow(grid, cmap="Greys", vmin=0, vmax=1)
        ax.set_xticks(range(len(grid[0])))
        ax.set_yticks(range(len(grid)))
        ax.set_title(titles[k] if titles else (library.name_of(f) or f.serialize()), fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_corpus(report: CorpusReport, path: str) -> None:
    """Bar chart of alpha per corpus entry, failures in red."""
    plt = _pyplot()
    names = [e.name for e in report.entries]
    alphas = [e.alpha for e in report.entries]
    colors = ["tab:blue" if e.passed else "tab:red" for e in report.entries]
    fig, ax = plt.subplots(figsize=(max(6, 0.18 * len(names)), 3.2))
    ax.bar(range(len(names)), alphas, color=colors)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=90, fontsize=5)
    ax.set_ylabel("alpha")
    ax.set_title(report.summary())
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def implementation_text(impl: StrictImplementation) -> str:
    return format_implementation(impl)
