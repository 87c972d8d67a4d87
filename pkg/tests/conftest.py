from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from hypcf.fields import GF, QQ
from hypcf.poly import Poly, complete_square

settings.register_profile(
    "default", max_examples=100, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

SMALL_PRIMES = (3, 5, 7, 11, 13)


def _nonsquare(D):
    return bool(complete_square(D)[1])


@st.composite
def rational_D(draw, max_half_degree=3, coeff=20):
    """Non-square D over Q of even degree with a square leading coefficient."""
    d = draw(st.integers(1, max_half_degree))
    lc = draw(st.sampled_from([Fraction(1), Fraction(4), Fraction(9), Fraction(1, 4)]))
    body = draw(st.lists(st.integers(-coeff, coeff), min_size=2 * d, max_size=2 * d))
    D = Poly(QQ, [Fraction(c) for c in body] + [lc])
    if not _nonsquare(D):
        D = D + 1
    if not _nonsquare(D):
        D = D + 2
    return D


@st.composite
def integral_D(draw, max_half_degree=2, coeff=30):
    """Monic integral non-square D over Q."""
    d = draw(st.integers(1, max_half_degree))
    body = draw(st.lists(st.integers(-coeff, coeff), min_size=2 * d, max_size=2 * d))
    D = Poly(QQ, [Fraction(c) for c in body] + [Fraction(1)])
    if not _nonsquare(D):
        D = D + 1
    return D


@st.composite
def finite_field_D(draw, primes=SMALL_PRIMES, max_half_degree=2):
    """Non-square D over F_p with a square leading coefficient."""
    p = draw(st.sampled_from(primes))
    F = GF(p)
    d = draw(st.integers(1, max_half_degree))
    r = draw(st.integers(1, p - 1))
    body = draw(st.lists(st.integers(0, p - 1), min_size=2 * d, max_size=2 * d))
    D = Poly(F, [F.elem(c) for c in body] + [F.elem(r * r)])
    k = 1
    while not _nonsquare(D):
        D = D + F.elem(k)
        k += 1
    return D


@pytest.fixture
def quartic():
    from hypcf.parse import parse_poly
    return parse_poly("x^4+5*x^2-3*x+19")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
