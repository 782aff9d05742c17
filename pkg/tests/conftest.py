import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from drinfeld.field import GF
from drinfeld.poly import Poly
from drinfeld.ratfunc import RatFunc
from drinfeld.series import USeries

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

# filled in by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


def polys(F: GF, max_deg: int = 6):
    return st.lists(st.integers(0, F.q - 1), max_size=max_deg + 1).map(lambda c: Poly(F, c))


def nonzero_polys(F: GF, max_deg: int = 6):
    return polys(F, max_deg).filter(bool)


def ratfuncs(F: GF, max_deg: int = 4):
    return st.builds(lambda n, d: RatFunc(n, d.monic()), polys(F, max_deg), nonzero_polys(F, max_deg))


def series(F: GF, prec: int = 12, max_deg: int = 3, integral: bool = False):
    coeff = polys(F, max_deg) if integral else ratfuncs(F, max_deg)
    return st.lists(coeff, min_size=prec, max_size=prec).map(
        lambda cs: USeries.from_coeffs(F, cs, prec))


def random_poly(F: GF, rng: random.Random, max_deg: int) -> Poly:
    return Poly(F, [rng.randrange(F.q) for _ in range(rng.randrange(max_deg + 2))])


def random_series(F: GF, rng: random.Random, prec: int, max_deg: int = 3,
                  integral: bool = True) -> USeries:
    coeffs = []
    for _ in range(prec):
        c = random_poly(F, rng, max_deg)
        if not integral and rng.random() < 0.3:
            d = random_poly(F, rng, 2)
            if d:
                c = RatFunc(c, d.monic())
        coeffs.append(c)
    return USeries.from_coeffs(F, coeffs, prec)


@pytest.fixture
def F3():
    return GF(3)


@pytest.fixture
def F5():
    return GF(5)
