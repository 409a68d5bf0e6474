from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hecke_branching.hall.laurent import ONE, V, LaurentPoly, qfactorial, qint
from hecke_branching.multiseg import DomainError

from oracles import laurent_eval

terms = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=5)
points = st.sampled_from([Fraction(2), Fraction(-3), Fraction(1, 2), Fraction(5, 3)])


@given(terms, terms, points)
def test_ring_operations_match_evaluation(a, b, x):
    pa, pb = LaurentPoly(a), LaurentPoly(b)
    assert (pa + pb)(x) == laurent_eval(a, x) + laurent_eval(b, x)
    assert (pa - pb)(x) == laurent_eval(a, x) - laurent_eval(b, x)
    assert (pa * pb)(x) == laurent_eval(a, x) * laurent_eval(b, x)


@given(terms, points)
def test_bar_is_involution(a, x):
    p = LaurentPoly(a)
    assert p.bar().bar() == p
    assert p.bar()(x) == laurent_eval(a, 1 / x)


@given(terms, terms)
def test_exact_division(a, b):
    pa, pb = LaurentPoly(a), LaurentPoly(b)
    if pb:
        assert (pa * pb).exact_div(pb) == pa


def test_inexact_division():
    with pytest.raises(ArithmeticError):
        ONE.exact_div(V + ONE)


def test_quantum_integers():
    assert qint(1) == ONE
    assert qint(2) == V + V.bar()
    assert qint(3) == LaurentPoly({2: 1, 0: 1, -2: 1})
    assert qfactorial(3) == qint(2) * qint(3)
    for n in range(1, 6):
        assert qint(n).is_symmetric()
        assert qint(n)(1) == n


def test_json_roundtrip():
    p = LaurentPoly({-1: 2, 3: -1})
    assert p.to_json() == {"-1": 2, "3": -1}
    assert LaurentPoly.from_json(p.to_json()) == p
    with pytest.raises(DomainError, match="coeff"):
        LaurentPoly.from_json({"a": 1})
    with pytest.raises(DomainError, match="coeff.1"):
        LaurentPoly.from_json({"1": 0.5})


def test_str():
    assert str(LaurentPoly({2: 1, 0: -3})) == "v^2 - 3"
    assert str(LaurentPoly()) == "0"
