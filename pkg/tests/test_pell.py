from fractions import Fraction

import pytest
from hypothesis import given

from hypcf.cf import cf_init_sqrt, detect_period
from hypcf.errors import BadPrime, NotConstant, NotSquareFree, SquareReduction
from hypcf.fields import GF
from hypcf.parse import parse_poly
from hypcf.pell import (NotPellian, TorsionBound, char2_decompose, find_pell, pell_from_period,
                        pell_mul, pell_normalize, pell_verify, torsion_order_mod, two_prime_test)

from conftest import finite_field_D
from oracles import min_pell_degree_mod_p

QUARTIC = "x^4+5*x^2-3*x+19"
OCTIC = "x^8-x^7-3/4*x^6+7/2*x^5-21/4*x^4+7/2*x^3-3/4*x^2-x+1"


def test_x6_plus_x_minimal_solution():
    D = parse_poly("x^6+x")
    rep, sol = find_pell(D)
    assert sol.p == parse_poly("2*x^5+1") and sol.q == parse_poly("2*x^2") and sol.omega == 1


def test_group_law_and_normalisation():
    D = parse_poly("x^2+1")
    s = pell_verify(parse_poly("x"), parse_poly("1"), D)
    assert s.omega == -1
    s2 = pell_mul(s, s, D)
    assert s2.omega == 1 and s2.p == parse_poly("2*x^2+1")
    assert pell_normalize(s, D).omega == 1


def test_non_solution_rejected():
    with pytest.raises(NotConstant) as exc:
        pell_verify(parse_poly("x"), parse_poly("1"), parse_poly("x^2+x"))
    assert exc.value.residual == parse_poly("-x")


@pytest.mark.parametrize("p,m", [(5, 8), (7, 3), (13, 13), (19, 7)])
def test_torsion_orders_agree_with_linear_algebra(p, m):
    D = parse_poly(QUARTIC)
    assert torsion_order_mod(D, p).torsion_order == m
    assert min_pell_degree_mod_p(D, p) == m


def test_torsion_report_flags_non_squarefree():
    D = parse_poly(QUARTIC)
    rep = torsion_order_mod(D, 7)
    assert rep.quasi_period == 2 and not rep.squarefree
    with pytest.raises(NotSquareFree):
        torsion_order_mod(D, 7, strict=True)


def test_bad_primes():
    D = parse_poly(QUARTIC)
    with pytest.raises(SquareReduction):
        torsion_order_mod(D, 3)
    with pytest.raises(BadPrime):
        torsion_order_mod(D, 2)
    with pytest.raises(BadPrime):
        torsion_order_mod(parse_poly("5*x^2+1"), 5)


def test_two_prime_verdicts():
    assert isinstance(two_prime_test(parse_poly(QUARTIC), 5, 7), NotPellian)
    res = two_prime_test(parse_poly(OCTIC), 3, 11)
    assert isinstance(res, NotPellian) and res.orders == (10, 40)
    res = two_prime_test(parse_poly("x^6+x"), 3, 7)
    assert isinstance(res, TorsionBound) and res.bound % 5 == 0


def test_specialisation_at_three():
    D = parse_poly("x^4+2*x^2+3*x+1")
    assert torsion_order_mod(D, 5).torsion_order == 10
    assert torsion_order_mod(D, 7).torsion_order == 5
    assert isinstance(two_prime_test(D, 5, 7), NotPellian)


@given(finite_field_D(primes=(3, 5, 7)))
def test_period_gives_unit_norm_solution(D):
    rep = detect_period(cf_init_sqrt(D))
    sol = pell_from_period(D, rep)
    assert (sol.p * sol.p - D * sol.q * sol.q).deg == 0


def test_char2_decomposition():
    F = GF(2)
    assert char2_decompose(parse_poly("x^4+x^2+1", F)) is not None
    assert char2_decompose(parse_poly("x^4+x+1", F)) is None
