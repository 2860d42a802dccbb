import io
import os
from contextlib import redirect_stdout, redirect_stderr
from pathlib import Path

import pytest

from maxcsp import library, report
from maxcsp.chains import is_supermodular_on_chain, parse_chain
from maxcsp.classifier import classify
from maxcsp.cli import main
from maxcsp.corpus import verify_corpus
from maxcsp.gadgets import verify
from maxcsp.implfile import parse_implementation
from maxcsp.morphisms import compute_core
from maxcsp.search import SearchBounds, search
from maxcsp.solver import parse_instance, solve_exact

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


# thin-adapter checks: the CLI prints exactly the rendered library result


def test_classify_adapter():
    preds = library.resolve("neq3", 3)
    for fmt in ("text", "structured"):
        code, out, _ = run("classify", "-p", "neq3", "--format", fmt)
        assert code == 3
        assert out == report.render(report.classification_lines(classify(preds)), fmt)
    assert "APX-complete" in out


def test_classify_exit_codes():
    assert run("classify", "-p", "h7")[0] == 0
    hs = [arg for i in range(1, 14) for arg in ("-p", f"h{i}")]
    code, out, _ = run("classify", *hs, "-p", "U_D")
    assert code == 0 and "0<1<2" in out
    assert run("classify", "--predicates", DATA / "neq3.preds")[0] == 3
    assert run("classify", "-p", "000/000/000")[0] == 2
    assert run("classify", "-p", "nosuch")[0] == 2
    assert run("classify")[0] == 2
    assert run("classify", "--predicates", DATA / "missing.preds")[0] == 2
    assert run("bogus-command")[0] == 2


def test_supermodular_adapter():
    code, out, _ = run("supermodular", "-p", "100/011/011", "--chain", "0<1<2")
    assert code == 0 and "supermodular" in out and "not" not in out
    f = library.get("h7")
    c = parse_chain("0<1<2")
    assert out == report.render(report.supermodular_lines(f, [(c, is_supermodular_on_chain(f, c))]))
    code, out, _ = run("supermodular", "-p", "eq3", "--dedup-duals", "--format", "structured")
    assert code == 1 and out.count("not supermodular") == 3
    assert "a=(1, 1) b=(0, 2)" in out


def test_core_adapter():
    code, out, _ = run("core", "-p", "arc01", "--format", "structured")
    preds = [library.get("arc01")]
    assert code == 0
    assert out == report.render(report.core_lines(preds, compute_core(preds)), "structured")
    assert "retraction: [0,1,2]->[0,1,1]" in out


def test_verify_impl_codes():
    code, out, _ = run("verify-impl", DATA / "f4_neq3.impl")
    block = parse_implementation((DATA / "f4_neq3.impl").read_text())
    assert code == 0
    assert out == report.render(report.verification_lines(block.implementation, verify(block.implementation)))
    code, out, _ = run("verify-impl", DATA / "f4_neq3_bad.impl")
    assert code == 1 and "counterexample" in out
    code, _, err = run("verify-impl", DATA / "malformed.impl")
    assert code == 2 and err.startswith("error:")


def test_search_impl():
    code, out, _ = run("search-impl", "-s", "irrefl.f1", "-t", "neq3", "--budget", "0,2")
    found = search([library.get("irrefl.f1")], library.get("neq3"), 0, 2)
    assert code == 0 and out == report.render(report.search_lines(found, SearchBounds(0, 2)))
    code, out, _ = run("search-impl", "-s", "u0", "-t", "neq2", "--domain", "2", "--budget", "1,2")
    assert code == 1 and "none within budget" in out
    assert run("search-impl", "-s", "neq3", "-t", "eq3", "--budget", "x")[0] == 2


def test_solve():
    code, out, _ = run("solve", DATA / "k4.inst", "--format", "structured")
    inst = parse_instance((DATA / "k4.inst").read_text())
    assert code == 0
    assert out == report.render(report.solve_lines(inst, solve_exact(inst)), "structured")
    assert "optimum: 4" in out
    assert run("solve", DATA / "k4.inst", "--budget", "10")[0] == 2


def test_corpus_verify():
    code, out, _ = run("corpus-verify", "--quiet")
    assert code == 0 and out.strip().endswith("70/70 implementations verified")
    assert out == report.render(report.corpus_lines(verify_corpus(), verbose=False))


def test_figures(tmp_path):
    for argv in (("classify", "-p", "eq3", "-p", "U_D"), ("core", "-p", "arc01"),
                 ("supermodular", "-p", "h7"), ("corpus-verify", "-q")):
        path = tmp_path / f"{argv[0]}.png"
        run(*argv, "--figure", path)
        assert path.exists() and path.stat().st_size > 1000
        assert path.read_bytes()[:4] == b"\x89PNG"


def test_deterministic():
    argv = ("classify", "--predicates", DATA / "eq3_unaries.preds", "--certificate", "--format", "structured")
    assert run(*argv) == run(*argv)


GOLDEN_CASES = {
    "classify_neq3.txt": ("classify", "--predicates", DATA / "neq3.preds"),
    "classify_eq3_certificate.txt": ("classify", "--predicates", DATA / "eq3_unaries.preds",
                                     "--certificate", "--format", "structured"),
    "supermodular_eq3.txt": ("supermodular", "-p", "eq3", "--format", "structured"),
    "core_arc01.txt": ("core", "-p", "arc01"),
    "verify_bad.txt": ("verify-impl", DATA / "f4_neq3_bad.impl", "--format", "structured"),
    "solve_triangle.txt": ("solve", DATA / "triangle.inst"),
    "corpus_verify.txt": ("corpus-verify", "--format", "structured"),
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name):
    _, out, _ = run(*GOLDEN_CASES[name])
    path = GOLDEN / name
    if os.environ.get("MAXCSP_UPDATE_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()
