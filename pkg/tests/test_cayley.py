import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from boltzmann import (cayley_coefficients, cayley_curve, cayley_determinant,
                       cayley_determinants, closed_form_condition, divisor_contamination,
                       make_params, periodicity_verdict, proper_divisors)
from boltzmann.errors import OutsideRegion, SingularParameters, UnsupportedPeriod
from boltzmann.numeric import QuadExt

from conftest import GENERIC, PERIOD3, PERIOD4, PERIOD6
from strategies import regular_params


def b2_closed_form(p):
    E, D = p.E, p.D
    s = D + 2 * E
    c3 = 4 * (D * D - 4) * E * E + 4 * D * (D * D - 3) * E + D ** 4 - 2 * D * D - 3
    return -s * s * c3 / (2 * abs(p.r_squared))


def test_cubic_at_period3():
    c = cayley_curve(make_params(*PERIOD3))
    assert c.cubic == (Fraction(4, 9), Fraction(-32, 27), Fraction(64, 81), Fraction(-1024, 81))
    assert c(0) == c.params.r_squared
    assert c.k_squared == Fraction(-5, 27) and c.s0 == 3


def test_frozen_coefficients():
    p = make_params(*PERIOD3)
    assert cayley_coefficients(p, 5) == [1, Fraction(-4, 3), 0, Fraction(-128, 9),
                                         Fraction(-512, 27), Fraction(-2048, 81)]
    raw = cayley_coefficients(p, 3, normalized=False)
    assert raw == [Fraction(2, 3), Fraction(-8, 9), 0, Fraction(-256, 27)]
    g = make_params(*GENERIC)
    B = cayley_coefficients(g, 4)
    r = Fraction(23, 72)
    assert B[1] == QuadExt(0, Fraction(-7, 2), r)
    assert B[2] == Fraction(1813, 4416)
    assert B[3] == QuadExt(0, Fraction(-162925, 8832), r)
    assert B[4] == Fraction(-2423106007, 117006336)


def test_frozen_determinants_generic():
    dets = cayley_determinants(make_params(*GENERIC), 6)
    assert dets[3] == Fraction(1813, 4416)
    assert dets[5] == Fraction(-60561370893191, 516699979776)
    assert dets[6] == Fraction(-7838179871481029, 169018304495616)


@pytest.mark.parametrize("pair, n", [(PERIOD3, 3), (PERIOD4, 4), (PERIOD6, 6), (PERIOD3, 6)])
def test_exact_zeros(pair, n):
    p = make_params(*pair)
    assert cayley_determinant(p, n) == 0
    assert closed_form_condition(n, p) == 0


def test_determinants_nonzero_off_locus():
    dets = cayley_determinants(make_params(*GENERIC), 6)
    assert all(v != 0 for v in dets.values())


def _ratio_oracle(p):
    # det_n / closed_form_n as exact rational functions of (E, D)
    s, R = p.D + 2 * p.E, p.R
    return {3: -s ** 2 / (2 * R ** 2), 4: s ** 3 / (2 * R ** 3),
            5: s ** 6 / (16 * R ** 6), 6: s ** 8 / (64 * R ** 8)}


@settings(max_examples=40)
@given(regular_params(exact=True))
def test_determinants_match_closed_forms_exactly(p):
    dets = cayley_determinants(p, 6)
    ratios = _ratio_oracle(p)
    for n in range(3, 7):
        assert dets[n] == ratios[n] * closed_form_condition(n, p)


@settings(max_examples=40)
@given(regular_params(exact=True))
def test_b2_closed_form_exact(p):
    assert cayley_coefficients(p, 2)[2] == b2_closed_form(p)


@settings(max_examples=60)
@given(regular_params())
def test_exact_and_float_agree(p):
    pe = make_params(Fraction(p.E), Fraction(p.D))
    exact = cayley_determinants(pe, 6)
    approx = cayley_determinants(p, 6)
    for n in exact:
        ref = float(exact[n])
        assert approx[n] == pytest.approx(ref, rel=1e-7, abs=1e-9)


@settings(max_examples=40)
@given(regular_params(exact=True))
def test_normalisation_is_a_global_unit(p):
    # raw coefficients are R times the normalised ones; zero sets coincide
    raw = cayley_coefficients(p, 5, normalized=False)
    unit = cayley_coefficients(p, 5)
    assert all(a == p.R * b for a, b in zip(raw, unit))
    assert raw[0] == p.R and unit[0] == 1


def test_series_identity_at_generic():
    p = make_params(*GENERIC)
    B = cayley_coefficients(p, 6, normalized=False)
    c = cayley_curve(p)
    sq = [sum(B[i] * B[k - i] for i in range(k + 1)) for k in range(7)]
    assert sq == [*c.cubic, 0, 0, 0]


def test_preconditions():
    with pytest.raises(SingularParameters):
        cayley_coefficients(make_params(Fraction(-1, 4), Fraction(5, 2)), 3)
    with pytest.raises(SingularParameters):
        cayley_determinant(make_params(Fraction(-1, 3), 2), 3)
    with pytest.raises(OutsideRegion):
        cayley_coefficients(make_params(Fraction(-3, 4), Fraction(5, 2)), 3)
    with pytest.raises(UnsupportedPeriod):
        cayley_determinant(make_params(*GENERIC), 2)
    with pytest.raises(UnsupportedPeriod):
        closed_form_condition(7, make_params(*GENERIC))


def test_divisors_and_contamination():
    assert proper_divisors(6) == [2, 3]
    assert proper_divisors(5) == []
    p3 = make_params(*PERIOD3)
    assert divisor_contamination(p3, 6) == [3]
    v = periodicity_verdict(p3, 6)
    assert v.vanishes and not v.periodic and v.contaminated_by == (3,)
    v6 = periodicity_verdict(make_params(*PERIOD6), 6)
    assert v6.periodic


def test_period5_float_parameters():
    p = make_params(-0.6769716520957274, math.sqrt(3))
    assert abs(closed_form_condition(5, p)) < 1e-9
    assert abs(cayley_determinant(p, 5)) < 1e-12
