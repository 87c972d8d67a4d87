from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hypcf.cf import (cf_init_general, cf_init_sqrt, cf_rational, convergents, detect_period,
                      evaluate_cf, expand, is_sigma_reduced, palindrome_check,
                      partial_quotients, scale_cf)
from hypcf.errors import PositiveOrder, RationalInput, SquareD
from hypcf.fields import GF, QQ
from hypcf.laurent import LaurentSeries, sqrt_series, truncate
from hypcf.parse import parse_poly
from hypcf.poly import Poly

from conftest import finite_field_D, rational_D


def series_quotients(alpha, steps):
    """Partial quotients by repeated truncation and inversion of a Laurent series."""
    out = []
    for _ in range(steps):
        a = truncate(alpha)
        out.append(a)
        alpha = (alpha - a).inverse()
    return out


def sqrt_alpha(D, W=80):
    return sqrt_series(D, W)


def test_quartic_first_quotients():
    got = partial_quotients(parse_poly("x^4+5*x^2-3*x+19"), 3)
    assert got == [parse_poly("x^2+5/2"), parse_poly("-2/3*x-17/6"),
                   parse_poly("-24/329*x+33270/108241")]


@settings(max_examples=40)
@given(rational_D(max_half_degree=2, coeff=9))
def test_recursion_agrees_with_series_expansion(D):
    quot = partial_quotients(D, 4)
    assert quot == series_quotients(sqrt_alpha(D, 30), 4)


@given(finite_field_D())
def test_recursion_agrees_with_series_expansion_fp(D):
    quot = partial_quotients(D, 6)
    assert quot == series_quotients(sqrt_alpha(D), 6)


def test_general_quadratic_irrational():
    D = parse_poly("x^4+5*x^2-3*x+19")
    u, v, w = parse_poly("x^3+1"), parse_poly("2*x"), parse_poly("x^2-3")
    st = cf_init_general(u, v, w, D)
    W = 80
    S = sqrt_series(D, W)
    num = S * v + u
    alpha = num * LaurentSeries.from_poly(w, -W).inverse()
    assert expand(st, 6)[0] == series_quotients(alpha, 6)


def test_general_rejects_bad_input():
    D = parse_poly("x^2+1")
    with pytest.raises(RationalInput):
        cf_init_general(parse_poly("x"), Poly.zero(QQ), parse_poly("1"), D)
    with pytest.raises(PositiveOrder):
        cf_init_general(parse_poly("0"), parse_poly("1"), parse_poly("x^3"), D)


def test_square_rejected():
    with pytest.raises(SquareD):
        cf_init_sqrt(parse_poly("x^2-2*x+1"))
    with pytest.raises(SquareD):
        cf_init_sqrt(parse_poly("4"))


def test_states_sigma_reduced_after_first_step():
    _, states = expand(cf_init_sqrt(parse_poly("x^4+5*x^2-3*x+19")), 8)
    assert all(is_sigma_reduced(s) for s in states[1:])


def test_pell_period_x6_plus_x():
    D = parse_poly("x^6+x")
    rep = detect_period(cf_init_sqrt(D))
    assert (rep.found, rep.quasi_period, rep.period, rep.mu) == (True, 2, 2, 1)
    assert palindrome_check(rep, rep.quotients)


def test_nonperiodic_reports_not_found():
    rep = detect_period(cf_init_sqrt(parse_poly("x^4+5*x^2-3*x+19")), 25)
    assert not rep.found and rep.status == "NotFoundWithin(25)"


def test_finite_field_is_always_periodic():
    rep = detect_period(cf_init_sqrt(parse_poly("x^4+5*x^2-3*x+19", GF(19))))
    assert rep.found and rep.quasi_period == 6


def test_rational_cf_roundtrip():
    p, q = parse_poly("x^5-3*x+2"), parse_poly("2*x^2+7")
    quot = cf_rational(p, q)
    pp, qq = evaluate_cf(quot)
    assert pp * q == qq * p


@given(rational_D(max_half_degree=2, coeff=9), st.sampled_from([Fraction(2), Fraction(-3, 5)]))
def test_scaling_alpha_scales_quotients(D, mu):
    quot = partial_quotients(D, 4)
    st_ = cf_init_general(Poly.zero(QQ), Poly.const(QQ, mu), Poly.const(QQ, 1), D)
    assert expand(st_, 4)[0] == scale_cf(quot, mu)


@given(rational_D(max_half_degree=2, coeff=9))
def test_convergents_approximate_sqrt(D):
    # deg(p^2 - D q^2) < deg D / 2 for every convergent
    d = int(D.deg) // 2
    for c in convergents(partial_quotients(D, 5)):
        assert (c.p * c.p - D * c.q * c.q).deg < d
