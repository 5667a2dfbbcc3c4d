import math
from fractions import Fraction

import numpy as np
import pytest

from boltzmann import ParameterTag, cayley_determinant, classify_parameters, closed_form_condition, make_params
from boltzmann.errors import AdmissibleSampleNotFound, NoSignChange, OutsideRegion
from boltzmann.search import (ScanGrid, bisect, find_periodic_parameters, sample_states,
                              scan_periodicity, verify_poncelet)

from conftest import GENERIC, PERIOD3, PERIOD4, PERIOD6
from strategies import d_interval

PERIOD5_E = -0.6769716520957  # frozen: bisection on the period-5 determinant at D = sqrt(3)


def test_bisect_basic():
    assert bisect(lambda x: x * x - 2, 0.0, 2.0) == pytest.approx(math.sqrt(2), abs=1e-12)
    with pytest.raises(NoSignChange):
        bisect(lambda x: x * x + 1, -1.0, 1.0)


@pytest.mark.parametrize("n, fixed, bracket, expected", [
    (3, ("D", 1.75), (-0.3, -0.1), -5 / 24),
    (4, ("D", 11 / 9), (-0.3, -0.1), -20 / 99),
    (6, ("D", 0.8), (-0.3, -0.2), -31 / 140),
    (5, ("D", math.sqrt(3)), (-0.75, -0.6), PERIOD5_E),
])
def test_find_periodic_parameters(n, fixed, bracket, expected):
    roots = find_periodic_parameters(n, fixed, bracket)
    assert len(roots) == 1
    r = roots[0]
    assert r.E == pytest.approx(expected, abs=1e-11)
    assert r.periodic
    assert abs(closed_form_condition(n, make_params(r.E, r.D))) < 1e-9


def test_find_along_d():
    roots = find_periodic_parameters(4, ("E", -20 / 99), (1.0, 1.5))
    assert any(abs(r.D - 11 / 9) < 1e-11 for r in roots)


def test_no_sign_change():
    with pytest.raises(NoSignChange):
        find_periodic_parameters(3, ("D", 1.75), (-0.15, -0.1))
    with pytest.raises(ValueError):
        find_periodic_parameters(3, ("X", 1.75), (-0.3, -0.1))


def test_sampling_is_seeded():
    p = make_params(*GENERIC)
    a = sample_states(p, 5, seed=7)
    assert a == sample_states(p, 5, seed=7)
    assert a != sample_states(p, 5, seed=8)


def test_sampling_failure():
    p = make_params(-0.9, 0.5)
    with pytest.raises(AdmissibleSampleNotFound):
        sample_states(p, 3, seed=0, max_attempts=50)


@pytest.mark.parametrize("pair, n", [(PERIOD3, 3), (PERIOD4, 4), (PERIOD6, 6)])
def test_poncelet_closure(pair, n):
    rep = verify_poncelet(make_params(*pair), n, 20, seed=1)
    assert rep.verdict == "Periodic"
    assert rep.max_closure_distance < 1e-9
    assert rep.min_divisor_distance > 1e-4


def test_generic_not_periodic():
    rep = verify_poncelet(make_params(*GENERIC), 3, 20, seed=0)
    assert rep.verdict == "NotPeriodic"
    assert min(rep.closure_distances) > 1e-3


def test_contaminated_level_set_is_not_period6():
    # period-3 parameters satisfy the period-6 condition but close after 3 steps
    rep = verify_poncelet(make_params(*PERIOD3), 6, 10, seed=0)
    assert rep.max_closure_distance < 1e-9
    assert rep.verdict == "NotPeriodic"


def test_reports_are_deterministic():
    p = make_params(*PERIOD6)
    assert verify_poncelet(p, 6, 10, seed=3).to_dict() == verify_poncelet(p, 6, 10, seed=3).to_dict()


def test_verify_rejects_outside_region():
    with pytest.raises(OutsideRegion):
        verify_poncelet(make_params(-0.9, 0.5), 3)


def test_determinant_dynamics_agreement():
    rng = np.random.default_rng(2024)
    disagreements = 0
    checked = 0
    while checked < 50:
        E = Fraction(float(rng.uniform(-0.9, -0.1))).limit_denominator(500)
        lo, hi = d_interval(float(E))
        D = Fraction(float(rng.uniform(lo, hi))).limit_denominator(500)
        p = make_params(E, D)
        if classify_parameters(p).tag is not ParameterTag.REGULAR_INTERIOR or float(p.r_squared) < 0.02:
            continue
        checked += 1
        for n in range(3, 7):
            analytic = cayley_determinant(p, n) == 0
            try:
                dynamic = verify_poncelet(p, n, 5, seed=checked).periodic
            except AdmissibleSampleNotFound:
                continue
            disagreements += analytic != dynamic
    for pair, n in [(PERIOD3, 3), (PERIOD4, 4), (PERIOD6, 6)]:
        p = make_params(*pair)
        disagreements += (cayley_determinant(p, n) == 0) != verify_poncelet(p, n, 5).periodic
    assert disagreements == 0


def test_scan_grid_validation():
    with pytest.raises(ValueError):
        ScanGrid((0, math.inf), (0, 1), 3, 3)
    with pytest.raises(ValueError):
        ScanGrid((0, 1), (0, 1), 1, 3)


def test_scan_rows_and_flags():
    # grid through the period-3 point and across the curve 1 + 2DE + 4E^2 = 0 at D = 5/2
    grid = ScanGrid((-5 / 24 - 0.04, -5 / 24 + 0.04), (1.75, 2.5), 5, 4)
    rows = scan_periodicity(grid, 6)
    assert len(rows) == int(grid.mask().sum())
    hit = next(r for r in rows if r.i == 2 and r.j == 0)
    assert hit.E == pytest.approx(-5 / 24) and "zero3" in hit.flags
    assert any("sign3" in r.flags for r in rows)
    singular = [r for r in rows if r.tag.is_boundary]
    assert all("singular" in r.flags and r.determinants[3] is None for r in singular)
    everything = scan_periodicity(grid, 6, include_outside=True)
    assert len(everything) == 20


def test_scan_two_periodic_curve_is_singular():
    grid = ScanGrid((-0.25, -0.25), (2.5, 2.5), 2, 2)
    rows = scan_periodicity(grid, 4)
    assert rows and all(r.tag is ParameterTag.BOUNDARY_TWO_PERIODIC for r in rows)
    assert all("singular" in r.flags for r in rows)


def test_scan_parallel_matches_serial():
    grid = ScanGrid((-0.6, -0.1), (0.5, 2.4), 6, 6)
    serial = scan_periodicity(grid, 5)
    parallel = scan_periodicity(grid, 5, workers=2)
    assert [(r.i, r.j, r.determinants, r.flags) for r in serial] == \
        [(r.i, r.j, r.determinants, r.flags) for r in parallel]
