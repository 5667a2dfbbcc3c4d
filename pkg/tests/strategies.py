"""Hypothesis strategies for admissible parameters and states."""
import math
from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from boltzmann import ParameterTag, classify_parameters, make_params, state_from_angle


def d_interval(E: float) -> tuple[float, float]:
    """Open D-interval of the bounded-motion region at energy E < 0."""
    lo = -2 * E
    hi = (1 + 4 * E * E) / (-2 * E)
    if E <= -0.5:
        hi = min(hi, 2.0)
    return lo, hi


@st.composite
def regular_params(draw, exact=False, margin=0.03):
    """Parameters in the open region, kept away from the boundary curves."""
    E = draw(st.floats(-0.95, -0.05))
    lo, hi = d_interval(E)
    u = draw(st.floats(0.05, 0.95))
    D = lo + u * (hi - lo)
    if exact:
        E = Fraction(E).limit_denominator(200)
        D = Fraction(D).limit_denominator(200)
    p = make_params(E, D)
    assume(classify_parameters(p).tag is ParameterTag.REGULAR_INTERIOR)
    assume(abs(float(D) - 2) > margin and float(D + 2 * E) > margin
           and float(p.r_squared) > margin)
    return p


@st.composite
def regular_states(draw):
    p = draw(regular_params())
    start = draw(st.floats(0.0, 2 * math.pi))
    branch = draw(st.integers(0, 1))
    for k in range(64):
        s = state_from_angle(p, start + k * 2 * math.pi / 64, branch)
        if s is not None and abs(1 - s.A1 ** 2) > 1e-3:
            return p, s
    assume(False)
