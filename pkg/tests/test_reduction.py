from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hypcf.fields import INF, OrdAt, PAdic
from hypcf.parse import parse_poly
from hypcf.poly import gauss_norm
from hypcf.reduction import (BadAt, Expansion, GoodThrough, Unsupported, WindowEstimate,
                             classify_reduction, compute_lambda, deg2_closed_form, degree_table,
                             genus1_pattern, reduce_D_classify, series_quotient, valuation_table)

QUARTIC = "x^4+5*x^2-3*x+19"
PERIOD8 = "x^4-8*x^3-42*x^2+424*x-119"


def test_classify_D():
    D = parse_poly(QUARTIC)
    assert reduce_D_classify(D, 3).kind == "Square"
    assert reduce_D_classify(D, 5).kind == "NonSquare"
    assert reduce_D_classify(D, 2).kind == "Unsupported"
    assert reduce_D_classify(parse_poly("5*x^2+1"), 5).kind == "Unsupported"


def test_classify_reduction():
    assert classify_reduction(parse_poly(QUARTIC), 5, 20) == BadAt(7)
    assert classify_reduction(parse_poly(QUARTIC), 19, 20) == BadAt(6)
    good = classify_reduction(parse_poly(PERIOD8), 7, 20)
    assert isinstance(good, GoodThrough) and good.conclusive
    assert isinstance(classify_reduction(parse_poly(QUARTIC), 2, 5), Unsupported)


def test_valuation_columns_match_direct_gauss_norms():
    D = parse_poly(QUARTIC)
    rows = valuation_table(D, 5, 16)
    ex = Expansion(D, 5)
    ex.ensure(16)

    def v5(f):
        return min((sympy.multiplicity(5, c.numerator) - sympy.multiplicity(5, c.denominator)
                    for c in f.coeffs if c), default=INF)

    for r in rows:
        assert r.nu_a == v5(ex.a[r.n])
        assert r.nu_q == v5(ex.q[r.n])


def test_nu_alpha_agrees_with_series_window():
    D = parse_poly(QUARTIC)
    ex = Expansion(D, 5)
    for n in range(1, 12):
        rule = ex.nu_alpha(n, 40)
        window = gauss_norm(ex.alpha_series(n, 40), ex.nu)
        if rule == -INF:
            assert window < -20
        else:
            assert rule == window


def test_window_estimate_text():
    assert str(WindowEstimate(-3, 40)) == "~-3"


def test_lambda_fibres_at_bad_indices():
    lm = compute_lambda(parse_poly(QUARTIC), PAdic(5), 34)
    lm.validate()
    multi = sorted(ns for ns in lm.fibres().values() if len(ns) > 1)
    assert multi == [[6, 7], [14, 15], [22, 23], [30, 31]]


def test_degree_table_nonconstant_cofactor():
    rows = degree_table(parse_poly("x^6+7*x^4+8*x^3+9*x^2+5"), 3, 10)
    r7 = rows[7]
    assert (r7.deg_q, r7.deg_v) == (7, 6)


def test_genus1_pattern_holds():
    D = parse_poly(QUARTIC)
    g5 = genus1_pattern(D, 5, 35)
    assert g5.ok and g5.ell == 7 and g5.unbounded == [7, 15, 23, 31]
    g19 = genus1_pattern(D, 19, 38)
    assert g19.ok and g19.unbounded[:3] == [6, 13, 20]


def test_genus1_needs_degree_four():
    with pytest.raises(ValueError):
        genus1_pattern(parse_poly("x^6+x"), 5, 10)


def test_degree_two_closed_form():
    rep = deg2_closed_form(parse_poly("x^2+5"), 5, 8)
    assert rep.matches_engine
    assert rep.nu_a[:3] == [0, -1, 0]
    assert rep.nu_q[3] == -2


def test_parameter_specialisation():
    D = parse_poly("x^6+x+t")
    assert classify_reduction(D, OrdAt(0), 10) == BadAt(2)
    assert isinstance(classify_reduction(D, OrdAt(3), 6), GoodThrough)


def test_series_quotient_matches_sympy():
    y = sympy.Symbol("y")
    c = [Fraction(3), Fraction(-1), Fraction(2)]
    a = [Fraction(2), Fraction(5), Fraction(0), Fraction(1)]
    got = series_quotient(c, a, 6)
    ser = sympy.series((3 - y + 2 * y**2) / (2 + 5 * y + y**3), y, 0, 6).removeO()
    assert got == [Fraction(int(ser.coeff(y, k).p), int(ser.coeff(y, k).q)) for k in range(6)]
