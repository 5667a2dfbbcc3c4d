from fractions import Fraction

import pytest
from hypothesis import settings

from boltzmann import make_params

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# Reference level sets.
PERIOD3 = (Fraction(-5, 24), Fraction(7, 4))
PERIOD4 = (Fraction(-20, 99), Fraction(11, 9))
PERIOD6 = (Fraction(-31, 140), Fraction(4, 5))
GENERIC = (Fraction(-7, 24), Fraction(7, 4))

# Filled by tests/test_acceptance.py, printed at the end of the session.
ACCEPTANCE_RESULTS: dict = {}


@pytest.fixture
def period3():
    return make_params(*PERIOD3)


@pytest.fixture
def generic():
    return make_params(*GENERIC)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
