"""Polynomial Pell equation p^2 - D q^2 = omega with omega a nonzero constant."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .cf import PeriodReport, cf_init_sqrt, convergents, detect_period
from .errors import (
    BadPrime,
    FieldMismatch,
    NotConstant,
    NotSquareFree,
    PeriodNotFound,
    SquareReduction,
    UnsupportedValuation,
)
from .fields import GF, QQ, PAdic
from .poly import Poly, complete_square, gauss_norm, is_squarefree, lc_val, reduce_poly


@dataclass(frozen=True)
class PellSolution:
    p: Poly
    q: Poly
    omega: object

    @property
    def trivial(self) -> bool:
        return not self.q


@dataclass(frozen=True)
class TorsionReport:
    prime: int
    quasi_period: int
    torsion_order: int
    genus: int
    squarefree: bool = True


@dataclass(frozen=True)
class NotPellian:
    primes: tuple
    orders: tuple
    reason: str


@dataclass(frozen=True)
class TorsionBound:
    primes: tuple
    orders: tuple
    bound: int


def pell_verify(p: Poly, q: Poly, D: Poly) -> PellSolution:
    res = p * p - D * q * q
    if not res.is_constant() or not res:
        raise NotConstant(f"p^2 - D q^2 = {res} is not a nonzero constant", residual=res)
    return PellSolution(p, q, res.coeffs[0])


def pell_mul(s1: PellSolution, s2: PellSolution, D: Poly) -> PellSolution:
    for s in (s1, s2):
        if s.p * s.p - D * s.q * s.q != Poly.const(D.field, s.omega):
            raise FieldMismatch("solution does not belong to this D")
    p = s1.p * s2.p + D * s1.q * s2.q
    q = s1.p * s2.q + s2.p * s1.q
    return PellSolution(p, q, s1.omega * s2.omega)


def pell_normalize(sol: PellSolution, D: Poly) -> PellSolution:
    """A solution with omega = 1 built from one with arbitrary omega."""
    inv = D.field.one / sol.omega
    p = (sol.p * sol.p + D * sol.q * sol.q) * inv
    q = (sol.p * sol.q) * (2 * inv)
    return pell_verify(p, q, D)


def pell_from_period(D: Poly, rep: PeriodReport, convs=None) -> PellSolution:
    if not rep.found:
        raise PeriodNotFound(f"no period within {rep.max_steps} steps")
    ell = rep.quasi_period
    if convs is None:
        convs = convergents(rep.quotients[:ell])
    c = convs[ell - 1]
    sol = pell_verify(c.p, c.q, D)
    expected = rep.states[ell].s.lc * (-1) ** ell
    if sol.omega != expected:
        raise NotConstant("unit norm does not match the period data")
    return sol


def find_pell(D: Poly, max_steps: Optional[int] = None):
    rep = detect_period(cf_init_sqrt(D), max_steps)
    if not rep.found:
        return rep, None
    return rep, pell_from_period(D, rep)


def _check_prime(p: int) -> None:
    if p == 2:
        raise BadPrime("p = 2 is not supported")
    try:
        PAdic(p)
    except UnsupportedValuation as exc:
        raise BadPrime(str(exc)) from exc


def reduce_mod(D: Poly, p: int) -> Poly:
    _check_prime(p)
    nu = PAdic(p)
    if D.field != QQ:
        raise FieldMismatch("D must have rational coefficients")
    if gauss_norm(D, nu) < 0:
        raise BadPrime(f"D has negative {p}-adic Gauss norm")
    if lc_val(D, nu) > 0:
        raise BadPrime(f"leading coefficient of D vanishes mod {p}")
    return reduce_poly(D, nu)


def torsion_order_mod(D: Poly, p: int, strict: bool = False) -> TorsionReport:
    """Quasi-period and torsion order of the reduction of D modulo p.

    A reduction that is not square-free is still expanded and flagged in
    the report (the value is then the degree of the minimal Pell solution
    modulo p); ``strict=True`` rejects it instead.
    """
    Dp = reduce_mod(D, p)
    _, omega = complete_square(Dp)
    if not omega:
        raise SquareReduction(f"D is a square modulo {p}")
    sf = is_squarefree(Dp)
    if not sf and strict:
        raise NotSquareFree(f"D is not square-free modulo {p}")
    rep = detect_period(cf_init_sqrt(Dp))
    if not rep.found:
        raise PeriodNotFound(f"no period modulo {p} within {rep.max_steps} steps")
    ell = rep.quasi_period
    m = int(convergents(rep.quotients[:ell])[ell - 1].p.deg)
    return TorsionReport(p, ell, m, int(D.deg) // 2 - 1, sf)


def _vp(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _power_exponent(x, p: int) -> Optional[int]:
    """e with x == p**e, else None (x a positive rational)."""
    from fractions import Fraction
    x = Fraction(x)
    if x.denominator != 1:
        return None
    n, e = x.numerator, 0
    while n % p == 0:
        n //= p
        e += 1
    return e if n == 1 else None


def two_prime_test(D: Poly, p1: int, p2: int, strict: bool = False):
    """Compare torsion orders modulo two primes.

    A Pellian D of torsion order m satisfies m = p_i^{e_i} m_i, and the
    exponent e_1 is at most the p_1-adic valuation of m_2 (symmetrically
    for e_2).  If no such m exists the result is a NotPellian certificate,
    otherwise a bound m | gcd(p1^e1' m1, p2^e2' m2).
    """
    from fractions import Fraction
    if p1 == p2:
        raise BadPrime("the two primes must differ")
    r1 = torsion_order_mod(D, p1, strict)
    r2 = torsion_order_mod(D, p2, strict)
    m1, m2 = r1.torsion_order, r2.torsion_order
    e1max, e2max = _vp(m2, p1), _vp(m1, p2)
    ok = False
    for e1 in range(e1max + 1):
        e2 = _power_exponent(Fraction(p1 ** e1 * m1, m2), p2)
        if e2 is not None and e2 <= e2max:
            ok = True
            break
    if not ok:
        reason = (f"m_{p1}={m1}, m_{p2}={m2} incompatible: no m = {p1}^e1*{m1} = {p2}^e2*{m2}"
                  f" with e1 <= {e1max}, e2 <= {e2max}")
        return NotPellian((p1, p2), (m1, m2), reason)
    return TorsionBound((p1, p2), (m1, m2), math.gcd(p1 ** e1max * m1, p2 ** e2max * m2))


def char2_decompose(D: Poly):
    """Write D = E^2 + r over F_2 or return None.

    Over the perfect field F_2 the constant r is always 0, and a
    decomposition exists exactly when every odd-degree coefficient of D
    vanishes.
    """
    if D.field.char != 2:
        raise FieldMismatch("char2_decompose needs coefficients in F_2")
    if any(c != 0 for c in D.coeffs[1::2]):
        return None
    E = Poly(D.field, D.coeffs[0::2], True)
    return E, D.field.zero
