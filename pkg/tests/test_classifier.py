import itertools

import pytest

from conftest import all_binary, supermodular_oracle
from maxcsp import library
from maxcsp.classifier import (
    ClassificationError,
    Verdict,
    classify,
    classify_boolean,
    hardness_certificate,
    terminal_kind,
)
from maxcsp.gadgets import compose, verify
from maxcsp.morphisms import compute_core, is_core
from maxcsp.predicates import Predicate, canonical_set, unary

U3 = library.all_unaries(3)


def names(*tokens, d=3):
    return [p for t in tokens for p in library.resolve(t, d)]


def oracle_verdict(preds):
    """Verdict from the definitional checker on the computed core."""
    core = compute_core(preds)
    if core.size == 1:
        return Verdict.TRIVIAL
    restricted = canonical_set(core.restricted)
    for order in itertools.permutations(range(core.size)):
        if all(f.arity == 1 or supermodular_oracle(f, order) for f in restricted):
            return Verdict.PO
    return Verdict.APX_COMPLETE


@pytest.mark.parametrize("tokens,d,verdict", [
    (["neq3"], 3, Verdict.APX_COMPLETE),
    ([f"h{i}" for i in range(1, 14)] + ["U_D"], 3, Verdict.PO),
    (["h7"], 3, Verdict.TRIVIAL),
    (["eq3", "U_D"], 3, Verdict.APX_COMPLETE),
    (["f_dicut"], 2, Verdict.APX_COMPLETE),
    (["neq2"], 2, Verdict.APX_COMPLETE),
])
def test_examples(tokens, d, verdict):
    preds = names(*tokens, d=d)
    result = classify(preds)
    assert result.verdict is verdict
    assert oracle_verdict(preds) is verdict


def test_po_has_chain_and_invariants():
    preds = names(*[f"h{i}" for i in range(1, 14)], "U_D")
    result = classify(preds)
    assert str(result.chain) == "0<1<2"
    assert all(f.arity == 1 or supermodular_oracle(f, result.chain.order) for f in result.core.restricted)


def test_trivial_reported_as_po_subcase():
    result = classify([library.get("h7")])
    assert result.po_trivial and result.tractable and result.core.size == 1


def test_errors():
    with pytest.raises(ClassificationError):
        classify([])
    with pytest.raises(ClassificationError):
        classify([Predicate(3, 2, (0,) * 9)])
    with pytest.raises(ClassificationError):
        classify([Predicate(4, 1, (1, 0, 0, 0))])
    with pytest.raises(ClassificationError):
        classify_boolean([library.get("neq3")])


def test_boolean_examples():
    assert classify_boolean([library.get("neq2")]).verdict is Verdict.APX_COMPLETE
    assert classify_boolean([Predicate(2, 2, (1, 1, 0, 1))]).verdict is Verdict.TRIVIAL
    dicut = [library.get("f_dicut"), unary([0], 2), unary([1], 2)]
    assert classify_boolean(dicut).verdict is Verdict.APX_COMPLETE
    assert not any(supermodular_oracle(library.get("f_dicut"), o) for o in ((0, 1), (1, 0)))


def test_boolean_agreement_all_sixteen():
    for f in all_binary(2):
        if not any(f.table):
            with pytest.raises(ClassificationError):
                classify([f])
            with pytest.raises(ClassificationError):
                classify_boolean([f])
            continue
        assert classify([f]).verdict is classify_boolean([f]).verdict is oracle_verdict([f])


def test_all_binary_d3_against_oracle():
    for f in all_binary(3):
        if any(f.table):
            assert classify([f]).verdict is oracle_verdict([f]), f.serialize()


def test_with_unaries_against_oracle():
    for f in itertools.islice(all_binary(3), 1, 512, 3):
        assert classify([f] + U3).verdict is oracle_verdict([f] + U3)


def test_core_invariance(rng):
    fs = [f for f in all_binary(3) if any(f.table)]
    for _ in range(200):
        preds = rng.sample(fs, rng.randint(1, 3))
        core = compute_core(preds)
        direct = classify(preds).verdict
        if core.size == 1:
            assert direct is Verdict.TRIVIAL
            continue
        restricted = list(core.restricted)
        if core.size in (2, 3) and all(any(g.table) for g in restricted):
            assert classify(restricted).verdict is direct


def test_irreflexive_singletons_apx():
    for i in range(1, 7):
        assert classify([library.get(f"irrefl.f{i}")]).verdict is Verdict.APX_COMPLETE


# certificates


def _check_certificate(preds, cert):
    assert cert is not None
    kind = terminal_kind(cert.terminal)
    assert kind is not None and kind[0] == cert.kind
    for link in cert.links:
        assert verify(link).ok
    if cert.links:
        single = compose(cert.chain)
        assert verify(single).ok and single.target == cert.terminal
        assert {t.predicate for t in single.terms} <= set(cert.base)
    else:
        assert cert.terminal in cert.base
    if cert.kind == "two-element-core":
        label, g = cert.terminal_core
        assert is_core([g])[0]
        assert not any(supermodular_oracle(g, o) for o in ((0, 1), (1, 0)))


def test_certificate_f1_one_link():
    cert = hardness_certificate([library.get("irrefl.f1")])
    _check_certificate([library.get("irrefl.f1")], cert)
    assert cert.kind == "neq3" and len(cert.links) == 1


def test_certificate_f5_via_f4():
    cert = hardness_certificate([library.get("irrefl.f5")])
    _check_certificate(None, cert)
    assert [l.target for l in cert.links] == [library.get("irrefl.f4"), library.get("neq3")]


def test_certificate_eqladder():
    preds = names("eq3", "U_D")
    cert = hardness_certificate(preds)
    _check_certificate(preds, cert)
    assert cert.kind == "neq3"
    assert [l.target for l in cert.links] == [library.get(f"eqladder.f{i}") for i in (1, 2, 3)] + [library.get("neq3")]


def test_certificate_zero_links():
    cert = hardness_certificate([library.get("neq3")])
    assert cert.kind == "neq3" and cert.links == ()
    cert = hardness_certificate([library.get("f_dicut")])
    _check_certificate(None, cert)


def test_certificate_requires_apx():
    with pytest.raises(ClassificationError):
        hardness_certificate([library.get("h7")])
    with pytest.raises(ClassificationError):
        hardness_certificate(names(*[f"h{i}" for i in range(1, 14)]))


def test_certificates_sound_on_sample(rng):
    apx = [f for f in all_binary(3) if any(f.table) and classify([f]).verdict is Verdict.APX_COMPLETE]
    found = 0
    for f in rng.sample(apx, 25):
        cert = hardness_certificate([f])
        if cert is not None:
            found += 1
            _check_certificate([f], cert)
    assert found >= 20


def test_classify_with_certificate_flag():
    result = classify([library.get("irrefl.f2")], certificate=True)
    assert result.certificate is not None and result.certificate.kind == "neq3"


def test_terminal_kind():
    assert terminal_kind(library.get("neq3"))[0] == "neq3"
    assert terminal_kind(library.get("neq2"))[0] == "neq2"
    kind, (label, g) = terminal_kind(library.get("arc01"))
    assert kind == "two-element-core" and g == library.get("f_dicut")
    assert str(label) == "[0,1,2]->[0,1,1]"
    assert terminal_kind(library.get("eq3")) is None
    assert terminal_kind(library.get("h2")) is None
