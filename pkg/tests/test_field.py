import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from evoalg.field import (
    COMPLEX, RATIONAL, BackendMismatch, ComplexField, ParseError, RootUnavailable,
    approx_eq, evaluate, get_field, nth_root,
)

PHI = cmath.exp(2j * cmath.pi / 7)
ZETA = cmath.exp(2j * cmath.pi / 3)


def test_nth_root_examples():
    assert nth_root(1, 2) == 1
    assert approx_eq(nth_root(-1, 2), 1j)
    assert approx_eq(nth_root(PHI ** 7, 7), 1)  # principal root of 1
    assert approx_eq(nth_root(PHI, 7) ** 7, PHI)


def test_principal_root_branch():
    # argument taken in [0, 2pi): the root of -1 of degree 7 is the primitive 14th root
    r = nth_root(-1, 7)
    assert approx_eq(r, cmath.exp(1j * cmath.pi / 7))
    assert approx_eq(nth_root(-8, 3), 2 * cmath.exp(1j * cmath.pi / 3))


def test_approx_eq_examples():
    assert approx_eq(0, 0)
    assert approx_eq(ZETA ** 3, 1)
    assert not approx_eq(1.0, 1.0 + 2 * COMPLEX.tol)
    assert approx_eq(1.0, 1.0 + 0.5 * COMPLEX.tol)


def test_backend_mixing_rejected():
    with pytest.raises(BackendMismatch):
        approx_eq(Fraction(1, 2), 0.5)
    with pytest.raises(BackendMismatch):
        RATIONAL.coerce(0.5)


def test_rational_roots():
    assert RATIONAL.nth_root(Fraction(4, 9), 2) == Fraction(2, 3)
    assert RATIONAL.nth_root(Fraction(-8, 27), 3) == Fraction(-2, 3)
    assert RATIONAL.nth_root(Fraction(128), 7) == 2
    for x, n in [(Fraction(2), 2), (Fraction(-1), 2), (Fraction(1, 2), 7)]:
        with pytest.raises(RootUnavailable):
            RATIONAL.nth_root(x, n)
    with pytest.raises(RootUnavailable):
        RATIONAL.root_of_unity(3)
    assert RATIONAL.root_of_unity(2) == -1


def test_rational_equality_is_exact():
    assert RATIONAL.eq(Fraction(1, 3), Fraction(2, 6))
    assert not RATIONAL.eq(Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10 ** 30))


def test_grammar():
    assert approx_eq(evaluate("1+2i", COMPLEX), 1 + 2j)
    assert approx_eq(evaluate("i", COMPLEX), 1j)
    assert approx_eq(evaluate("zeta3", COMPLEX), ZETA)
    assert approx_eq(evaluate("phi7**7", COMPLEX), 1)
    assert approx_eq(evaluate("sqrt(-1)", COMPLEX), 1j)
    assert approx_eq(evaluate("cbrt(8)", COMPLEX), 2)
    assert approx_eq(evaluate("rt7(128)", COMPLEX), 2)
    assert approx_eq(evaluate("-0.5i", COMPLEX), -0.5j)
    assert evaluate("3/4", RATIONAL) == Fraction(3, 4)
    assert evaluate("1.5", RATIONAL) == Fraction(3, 2)
    assert evaluate("sqrt(9/4)", RATIONAL) == Fraction(3, 2)
    assert evaluate("c*2", RATIONAL, {"c": Fraction(1, 3)}) == Fraction(2, 3)


@pytest.mark.parametrize("text", ["", "1+", "__import__('os')", "foo", "i"])
def test_grammar_errors_rational(text):
    with pytest.raises((ParseError, RootUnavailable)):
        evaluate(text, RATIONAL)


@pytest.mark.parametrize("text", ["", "1+", "__import__('os')", "unknown", "[1]"])
def test_grammar_errors_complex(text):
    with pytest.raises(ParseError):
        evaluate(text, COMPLEX)


def test_get_field():
    assert get_field("rational") is RATIONAL
    f = get_field("complex", 1e-6)
    assert isinstance(f, ComplexField) and f.tol == 1e-6
    with pytest.raises(ValueError):
        get_field("reals")


@given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False),
       st.sampled_from([2, 3, 7]))
def test_root_power_roundtrip(x, n):
    assert approx_eq(nth_root(x, n) ** n, x, 1e-8)


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def test_fmt_parse_roundtrip_complex(x):
    assert approx_eq(COMPLEX.parse(COMPLEX.fmt(x)), COMPLEX.clean(x), 1e-12)


@given(st.fractions(max_denominator=10 ** 6))
def test_fmt_parse_roundtrip_rational(x):
    assert RATIONAL.parse(RATIONAL.fmt(x)) == x


@given(st.fractions(max_denominator=50).filter(lambda q: q != 0), st.sampled_from([2, 3, 7]))
def test_rational_root_of_power(q, n):
    r = abs(q) if n == 2 else q
    assert RATIONAL.nth_root(r ** n, n) == r
