from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from tabular.laurent import (NEG_INF, ONE, QUANTUM_TWO, V, V_INV, ZERO, LaurentParseError,
                             LaurentPoly, format_laurent, lp_sum, parse_laurent)

polys = st.dictionaries(st.integers(-6, 6), st.integers(-9, 9), max_size=5).map(LaurentPoly)
v = sympy.Symbol("v")


def to_sympy(p: LaurentPoly):
    return sum((c * v ** e for e, c in p.items()), sympy.Integer(0))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a * ONE == a and a + ZERO == a
    assert a - a == ZERO


@given(polys, polys)
def test_product_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(polys)
def test_text_roundtrip(p):
    assert parse_laurent(format_laurent(p)) == p
    assert parse_laurent(str(p)) == p


@given(polys, polys)
def test_bar_is_a_ring_involution(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()


@given(polys)
def test_membership_of_A_minus(p):
    assert p.in_A_minus() == all(e <= 0 for e in p.terms)
    assert p.in_v_inv_A_minus() == all(e < 0 for e in p.terms)
    assert p.shift(-1).in_v_inv_A_minus() == p.in_A_minus()


@given(polys, st.integers(-5, 5))
def test_shift_is_multiplication_by_a_monomial(p, k):
    assert p.shift(k) == p * LaurentPoly.monomial(k)


def test_quantum_two_facts():
    assert QUANTUM_TWO == V + V_INV
    assert QUANTUM_TWO ** 2 == parse_laurent("v^2+2+v^-2")
    assert QUANTUM_TWO.degree() == 1 and QUANTUM_TWO.low_degree() == -1
    assert QUANTUM_TWO.evaluate(Fraction(1)) == 2
    assert V_INV ** 1 * V == ONE and V ** -2 == LaurentPoly.monomial(-2)


def test_zero_has_degree_minus_infinity():
    assert ZERO.degree() is NEG_INF
    assert NEG_INF < -10 ** 9
    assert format_laurent(ZERO) == "0"
    assert lp_sum([]) == ZERO


def test_non_unit_has_no_inverse():
    with pytest.raises(ValueError):
        QUANTUM_TWO ** -1


@pytest.mark.parametrize("text", ["v^", "2vv", "v^x", "+", "3v^-"])
def test_parse_errors_report_position(text):
    with pytest.raises(LaurentParseError):
        parse_laurent(text)
