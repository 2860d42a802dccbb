import itertools

import pytest
from hypothesis import given, strategies as st

from maxcsp import library
from maxcsp.predicates import (
    Predicate,
    PredicateError,
    canonical_set,
    diagonal_support,
    domain_of,
    evaluate,
    index_of,
    is_irreflexive,
    is_trivial,
    parse_predicate,
    unary,
)

# the thirteen binary predicates supermodular on 0<1<2 listed with the h names
H_LIST = {
    "h1": "000/000/001", "h2": "000/000/011", "h3": "000/011/011", "h4": "100/000/000",
    "h5": "100/000/001", "h6": "100/000/011", "h7": "100/011/011", "h8": "100/100/000",
    "h9": "100/100/001", "h10": "100/100/011", "h11": "100/101/001", "h12": "110/110/000",
    "h13": "110/110/001",
}


def test_parse_neq3():
    f = parse_predicate("011/101/110", 3)
    assert f == library.get("neq3")
    assert f.arity == 2 and f.d == 3


def test_parse_boolean_equality():
    f = parse_predicate("10/01", 2)
    assert [f(x, y) for x in range(2) for y in range(2)] == [1, 0, 0, 1]


def test_parse_h7():
    assert parse_predicate("100/011/011", 3) == library.get("h7")


def test_parse_separators_and_whitespace():
    assert parse_predicate("011\n101\n110", 3) == parse_predicate(" 011 / 101 / 110 ", 3)
    assert parse_predicate("011101110", 3).serialize() == "011/101/110"


@pytest.mark.parametrize("text,d", [("0110", 3), ("01/1x", 2), ("", 3), ("01/10", 1), ("010", 2)])
def test_parse_errors(text, d):
    with pytest.raises(PredicateError):
        parse_predicate(text, d)


def test_arity_inferred():
    assert parse_predicate("0" * 27, 3).arity == 3
    assert parse_predicate("101", 3).arity == 1


def test_evaluate_examples():
    neq3 = library.get("neq3")
    assert evaluate(neq3, (0, 1)) == 1
    assert evaluate(neq3, (2, 2)) == 0
    assert evaluate(library.get("h9"), (1, 0)) == 1


def test_evaluate_errors():
    with pytest.raises(PredicateError):
        evaluate(library.get("neq3"), (0,))
    with pytest.raises(PredicateError):
        evaluate(library.get("neq3"), (0, 3))


def test_is_trivial():
    assert is_trivial(Predicate(3, 2, (0,) * 9))
    assert not is_trivial(library.get("neq3"))
    assert not is_trivial(library.get("u0"))


def test_is_irreflexive():
    assert is_irreflexive(library.get("neq3"))
    assert not is_irreflexive(library.get("eq3"))
    assert is_irreflexive(parse_predicate("011/001/000", 3))


def test_diagonal_support():
    assert diagonal_support(library.get("h7")) == {0, 1, 2}
    assert diagonal_support(library.get("neq3")) == frozenset()
    assert diagonal_support(library.get("u01")) == {0, 1}


def test_irreflexive_iff_empty_diagonal():
    for bits in itertools.product((0, 1), repeat=9):
        f = Predicate(3, 2, bits)
        assert is_irreflexive(f) == (diagonal_support(f) == frozenset())


def test_index_bijection():
    for m in (1, 2, 3):
        seen = [index_of(3, t) for t in itertools.product(range(3), repeat=m)]
        assert seen == list(range(3**m))


@given(st.integers(2, 4).flatmap(lambda d: st.integers(1, 3).flatmap(
    lambda m: st.tuples(st.just(d), st.just(m), st.lists(st.integers(0, 1), min_size=d**m, max_size=d**m)))))
def test_round_trip(args):
    d, m, bits = args
    f = Predicate(d, m, tuple(bits))
    assert parse_predicate(f.serialize(), d) == f


def test_h_list_bit_for_bit():
    for name, matrix in H_LIST.items():
        assert library.get(name).serialize() == matrix, name


def test_library_names():
    assert library.get("neq2").serialize() == "01/10"
    assert library.get("f_dicut").serialize() == "01/00"
    assert library.get("eq3").serialize() == "100/010/001"
    assert library.get("u_{0,2}") == unary([0, 2], 3)
    assert library.get("u1", 2).d == 2
    with pytest.raises(PredicateError):
        library.get("nope")
    with pytest.raises(PredicateError):
        library.get("u3", 3)


def test_unary_sets():
    assert len(library.resolve("U_D", 3)) == 7
    assert library.resolve("C_D", 3) == [unary([a], 3) for a in range(3)]
    assert library.name_of(unary([0, 1], 3)) == "u01"
    assert library.name_of(library.get("neq3")) == "neq3"


def test_transpose_rename_restrict():
    f = library.get("f_dicut")
    assert f.transpose().serialize() == "00/10"
    assert f.rename([1, 0]).serialize() == "00/10"
    arc = library.get("arc01")
    assert arc.restrict([0, 1]) == f
    assert arc.complement().complement() == arc


def test_domain_of_and_canonical_set():
    with pytest.raises(PredicateError):
        domain_of([library.get("neq2"), library.get("neq3")])
    neq3 = library.get("neq3")
    assert canonical_set([neq3, neq3, library.get("u0")]) == (library.get("u0"), neq3)


def test_table_validation():
    with pytest.raises(PredicateError):
        Predicate(3, 2, (0,) * 8)
    with pytest.raises(PredicateError):
        Predicate(2, 1, (0, 2))
