"""Acceptance gate: one PASS/FAIL line per criterion, each with its time limit."""
import time
from contextlib import contextmanager

import pytest

from hypcf.cf import cf_init_sqrt, detect_period, palindrome_check, partial_quotients
from hypcf.fields import GF, OrdAt, QQt
from hypcf.parse import parse_poly
from hypcf.pell import NotPellian, find_pell, pell_from_period, torsion_order_mod, two_prime_test
from hypcf.reduction import (BadAt, Expansion, GoodThrough, classify_reduction, compute_lambda,
                             degree_table, genus1_pattern, valuation_table)
from hypcf.verify import read_table

from conftest import ACCEPTANCE_LINES

QUARTIC = "x^4+5*x^2-3*x+19"
SEXTIC = "x^6+7*x^4+8*x^3+9*x^2+5"
OCTIC = "x^8-x^7-3/4*x^6+7/2*x^5-21/4*x^4+7/2*x^3-3/4*x^2-x+1"
PERIOD8 = "x^4-8*x^3-42*x^2+424*x-119"


@contextmanager
def criterion(number, title, limit=None):
    """Record a PASS/FAIL line; fail on assertion errors or on exceeding ``limit`` seconds."""
    start = time.perf_counter()
    state = {"ok": False, "detail": ""}
    try:
        yield state
        state["ok"] = True
    except AssertionError as exc:
        state["detail"] = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        raise
    finally:
        elapsed = time.perf_counter() - start
        ok = state["ok"]
        if ok and limit is not None and elapsed > limit:
            ok = False
            state["detail"] = f"exceeded {limit:g} s"
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({elapsed:.2f} s)"
        if state["detail"]:
            line += f" -- {state['detail']}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        if state["ok"] and not ok:
            pytest.fail(line)


def rows_of(table):
    return [r.cells() for r in table]


def test_criterion_01_first_partial_quotients():
    with criterion(1, "first three partial quotients of x^4+5x^2-3x+19", 1.0):
        got = partial_quotients(parse_poly(QUARTIC), 3)
        want = [parse_poly(s) for s in ("x^2+5/2", "-2/3*x-17/6", "-24/329*x+33270/108241")]
        assert got == want, got


def test_criterion_02_pell_x6_plus_x():
    with criterion(2, "x^6+x has period 2 and solution (2x^5+1, 2x^2), omega 1", 1.0):
        D = parse_poly("x^6+x")
        rep, sol = find_pell(D)
        assert rep.period == 2 and rep.quasi_period == 2
        assert sol.p == parse_poly("2*x^5+1") and sol.q == parse_poly("2*x^2")
        assert sol.omega == 1


def test_criterion_03_good_reduction_example():
    with criterion(3, "period 8 example: degrees 9 and 7, all eight quotients", 1.0):
        D = parse_poly(PERIOD8)
        rep = detect_period(cf_init_sqrt(D))
        assert rep.period == 8, rep
        sol = pell_from_period(D, rep)
        assert (sol.p.deg, sol.q.deg) == (9, 7)
        want = ["x^2-4*x-29", "1/96*x+1/96", "-4*x+12", "1/32*x+5/32",
                "4/3*x-44/3", "1/32*x+5/32", "-4*x+12", "1/96*x+1/96"]
        assert rep.quotients[:8] == [parse_poly(s) for s in want]
        assert palindrome_check(rep, rep.quotients)


def test_criterion_04_torsion_orders_and_two_prime_test():
    with criterion(4, "torsion orders 8, 3, 7 mod 5, 7, 19 and NotPellian", 2.0):
        D = parse_poly(QUARTIC)
        assert torsion_order_mod(D, 5).torsion_order == 8
        assert torsion_order_mod(D, 7).torsion_order == 3
        r19 = torsion_order_mod(D, 19)
        assert (r19.torsion_order, r19.quasi_period) == (7, 6)
        assert isinstance(two_prime_test(D, 5, 7), NotPellian)


@pytest.mark.parametrize("prime,fixture,nrows,special", [
    (5, "quartic_nu5_valuations.csv", 35, (7, 15, 23, 31)),
    (19, "quartic_nu19_valuations.csv", 38, (13, 14, 27, 28)),
])
def test_criterion_05_valuation_tables(prime, fixture, nrows, special):
    with criterion(5, f"valuation table at {prime}, rows 0..{nrows - 1}", 30.0):
        want = read_table(fixture)
        got = [want[0]] + rows_of(valuation_table(parse_poly(QUARTIC), prime, nrows))
        assert len(got) == nrows + 1
        for i, (w, g) in enumerate(zip(want, got)):
            assert w == g, f"row {i - 1}: expected {w}, got {g}"
        if prime == 5:
            assert all(got[n + 1][2] == "-inf" for n in special)


def test_criterion_06_genus_one_pattern():
    with criterion(6, "genus-one valuation pattern at 5, rows 0..34"):
        g = genus1_pattern(parse_poly(QUARTIC), 5, 35)
        assert g.ell == 7
        assert not g.mismatches, g.mismatches
        assert not g.bound_violations, g.bound_violations


def test_criterion_07_degree_six_mod_three():
    with criterion(7, "degree-6 example mod 3 tables, quasi-period 126 mod 13", 120.0):
        D = parse_poly(SEXTIC)
        ex = Expansion(D, 3)
        lam = compute_lambda(D, ex.nu, 28, ex)
        want = read_table("sextic_mod3_degrees.csv")
        got = [want[0]] + rows_of(degree_table(D, 3, 29, ex, lam))
        assert got == want
        assert (got[8][4], got[8][6]) == ("7", "6")
        for prime, name in ((3, "sextic_nu3_valuations.csv"), (5, "sextic_nu5_valuations.csv"),
                            (19, "sextic_nu19_valuations.csv")):
            want = read_table(name)
            got = [want[0]] + rows_of(valuation_table(D, prime, len(want) - 1))
            assert got == want, name
        assert torsion_order_mod(D, 13).quasi_period == 126


def test_criterion_08_degree_eight_mod_three():
    with criterion(8, "degree-8 example mod 3 degrees and (3, 11) NotPellian"):
        D = parse_poly(OCTIC)
        want = read_table("octic_mod3_degrees.csv")
        rows = rows_of(degree_table(D, 3, 29))
        assert len(rows) == 29
        assert [want[0]] + rows[:len(want) - 1] == want
        res = two_prime_test(D, 3, 11)
        assert isinstance(res, NotPellian) and res.orders == (10, 40)


@pytest.mark.slow
def test_criterion_09_parameter_family():
    with criterion(9, "x^6+x+t over Q(t): quotients, bad at t=0, good at t=3 for 30 steps"):
        D = parse_poly("x^6+x+t")
        got = partial_quotients(D, 3)
        want = [parse_poly(s, QQt) for s in ("x^3", "2*x^2-2*t*x+2*t^2", "(-1/2*x-1/2*t)/t^3")]
        assert got == want
        assert classify_reduction(D, OrdAt(0), 10) == BadAt(2)
        assert classify_reduction(D, OrdAt(3), 30) == GoodThrough(30)


def test_criterion_10_property_suites():
    import subprocess
    import sys
    from pathlib import Path
    with criterion(10, "property suites, 100 cases each", 60.0):
        here = Path(__file__).parent
        proc = subprocess.run(
            [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
             str(here / "test_properties.py")],
            capture_output=True, text=True, cwd=here.parent)
        assert proc.returncode == 0, proc.stdout[-400:]
