import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boltzmann.numeric import (QuadExt, Tolerances, exact_sqrt, get_tolerances, is_exact,
                               is_zero, parse_number, sqrt)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=50)
radicands = st.sampled_from([Fraction(2), Fraction(3), Fraction(23, 72), Fraction(5, 7)])


@st.composite
def quad(draw):
    r = draw(radicands)
    return QuadExt(draw(fractions), draw(fractions), r)


def test_quadext_rejects_square_radicand():
    with pytest.raises(ValueError):
        QuadExt(1, 1, Fraction(4, 9))
    with pytest.raises(ValueError):
        QuadExt(1, 1, -2)


def test_sqrt_of_radicand_squares_back():
    s = exact_sqrt(3)
    assert isinstance(s, QuadExt)
    assert s * s == 3
    assert exact_sqrt(Fraction(4, 9)) == Fraction(2, 3)


def test_radicand_mismatch_is_rejected():
    with pytest.raises(ValueError):
        QuadExt(0, 1, 2) + QuadExt(0, 1, 3)
    # rational elements mix freely
    assert QuadExt(1, 0, 2) + QuadExt(0, 1, 3) == QuadExt(1, 1, 3)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadExt(1, 1, 2) / QuadExt(0, 0, 2)


@given(quad(), quad())
def test_field_axioms(u, v):
    v = QuadExt(v.a, v.b, u.r)
    assert u + v - v == u
    assert u * v == v * u
    if v != 0:
        assert (u / v) * v == u


@given(quad())
def test_float_conversion_matches_mpmath(u):
    with mpmath.workdps(50):
        ref = mpmath.mpf(u.a.numerator) / u.a.denominator + (
            mpmath.mpf(u.b.numerator) / u.b.denominator) * mpmath.sqrt(
            mpmath.mpf(u.r.numerator) / u.r.denominator)
        assert abs(float(u) - float(ref)) <= 1e-14 * max(1.0, abs(float(ref)))


@given(quad(), quad())
def test_ordering_agrees_with_floats(u, v):
    v = QuadExt(v.a, v.b, u.r)
    if abs(float(u) - float(v)) > 1e-9:
        assert (u < v) == (float(u) < float(v))


def test_float_mixing_falls_back_to_float():
    u = QuadExt(1, 1, 2)
    assert isinstance(u + 0.5, float)
    assert u * 2.0 == pytest.approx(2 * (1 + math.sqrt(2)))


def test_sqrt_dispatch():
    assert sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert isinstance(sqrt(2.0), float)
    assert isinstance(sqrt(mpmath.mpf(2)), mpmath.mpf)


def test_is_zero_exact_and_float():
    assert is_zero(Fraction(0), 1.0)
    assert not is_zero(Fraction(1, 10**30), 1.0)
    assert is_zero(1e-15, 1e-12)
    assert is_exact(1, Fraction(1, 2), QuadExt(0, 1, 2))
    assert not is_exact(1, 0.5)


@pytest.mark.parametrize("text, expected", [
    ("-5/24", Fraction(-5, 24)),
    ("7/4", Fraction(7, 4)),
    ("2", Fraction(2)),
    ("-0.25", -0.25),
    ("1e-3", 1e-3),
])
def test_parse_number(text, expected):
    value = parse_number(text)
    assert value == expected
    assert type(value) is type(expected)


def test_parse_number_sqrt_and_errors():
    assert parse_number("sqrt(3)") == pytest.approx(math.sqrt(3))
    assert parse_number("-sqrt(3)") == pytest.approx(-math.sqrt(3))
    for bad in ("abc", "1/0", "nan", "sqrt(-1)"):
        with pytest.raises(ValueError):
            parse_number(bad)


def test_tolerances_from_env():
    t = Tolerances.from_env({"BOLTZMANN_PRECISION": "eps_close=1e-7, eps_divisor=1e-3"})
    assert t.eps_close == 1e-7 and t.eps_divisor == 1e-3
    assert t.eps_class == Tolerances().eps_class
    with pytest.raises(ValueError):
        Tolerances.from_env({"BOLTZMANN_PRECISION": "nonsense=1"})


def test_get_tolerances_prefers_explicit(monkeypatch):
    monkeypatch.setenv("BOLTZMANN_PRECISION", "eps_close=1e-5")
    assert get_tolerances().eps_close == 1e-5
    explicit = Tolerances(eps_close=1e-3)
    assert get_tolerances(explicit) is explicit
