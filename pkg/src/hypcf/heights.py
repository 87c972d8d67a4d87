"""Logarithmic heights of rational polynomials and the convergent height bounds.

For f over Q write f = c * g with g a primitive integer vector.  By the
product formula the projective height is ``log max |g_i|``; this is the
fast route.  ``proj_height_places`` sums local contributions over the
archimedean place and each prime instead and is used as a cross-check.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Sequence

from flint import fmpz

from .cf import cf_init_sqrt, cf_step, convergents
from .errors import ZeroInput
from .laurent import sqrt_series
from .poly import Poly


def _primitive(coeffs: Sequence[Fraction]) -> List[int]:
    nz = [Fraction(c) for c in coeffs if c != 0]
    if not nz:
        raise ZeroInput("height of the zero vector")
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in nz), 1)
    ints = [int(c * den) for c in nz]
    g = reduce(math.gcd, (abs(x) for x in ints))
    return [x // g for x in ints]


def _log(n: int) -> float:
    """Natural log of a positive integer of any size."""
    if n < 1 << 1000:
        return math.log(n)
    k = n.bit_length() - 900
    return math.log(n >> k) + k * math.log(2)


def vector_height(coeffs: Sequence) -> float:
    return _log(max(abs(x) for x in _primitive(coeffs)))


def proj_height(f: Poly) -> float:
    if not f:
        raise ZeroInput("height of the zero polynomial")
    return vector_height(f.coeffs)


def aff_height(f: Poly) -> float:
    """Height of the point (1 : coefficients)."""
    return vector_height([Fraction(1)] + list(f.coeffs))


def number_height(x) -> float:
    x = Fraction(x)
    if x == 0:
        return 0.0
    return _log(max(abs(x.numerator), x.denominator))


def _vp(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def local_exponents(coeffs: Sequence) -> Dict[int, int]:
    """For each prime p: -min_i nu_p(c_i), i.e. log_p max |c_i|_p."""
    nz = [Fraction(c) for c in coeffs if c != 0]
    primes = set()
    for c in nz:
        for n in (c.numerator, c.denominator):
            if abs(n) > 1:
                primes.update(int(p) for p, _ in fmpz(abs(n)).factor())
    out = {}
    for p in sorted(primes):
        out[p] = -min(_vp(c.numerator, p) - _vp(c.denominator, p) for c in nz)
    return out


def proj_height_places(f: Poly) -> float:
    """Sum over all places of log max |f_i|_v (factorises coefficients)."""
    nz = [Fraction(c) for c in f.coeffs if c != 0]
    if not nz:
        raise ZeroInput("height of the zero polynomial")
    arch = max(abs(c) for c in nz)
    total = _log(arch.numerator) - _log(arch.denominator)
    for p, e in local_exponents(nz).items():
        total += e * math.log(p)
    return total


def product_formula_sum(x) -> Fraction:
    """Exact sum over places of log|x|_v expressed as a combination of logs.

    Returns the residual integer ratio: |x|_inf * prod_p |x|_p, which must be 1.
    """
    x = Fraction(x)
    val = abs(x)
    for p, e in local_exponents([x]).items():
        val *= Fraction(p) ** e
    return val


# ---------------------------------------------------------------------------
# bounds


def height_constant(D: Poly) -> float:
    d = int(D.deg) // 2
    return math.log(4) + 2 * math.log(2 * d) + proj_height(D)


def sqrt_coeff_bound_check(D: Poly, n: int, S=None) -> bool:
    """h(w_n) <= h(LC D)/2 + n K for the coefficient w_n of X^(d-n) in sqrt(D)."""
    d = int(D.deg) // 2
    S = S if S is not None else sqrt_series(D, n + 1)
    w = S.coeff(d - n)
    lhs = number_height(w)
    rhs = 0.5 * number_height(D.lc) + n * height_constant(D)
    return lhs <= rhs * (1 + 1e-9) + 1e-12


@dataclass(frozen=True)
class HeightReport:
    m: int
    deg_q: int
    h_p: float
    h_q: float
    h_a: float
    bound_p: float
    bound_q: float
    bound_a: float

    @property
    def ok(self) -> bool:
        tol = 1e-9
        return (self.h_p <= self.bound_p * (1 + tol) + tol
                and self.h_q <= self.bound_q * (1 + tol) + tol
                and self.h_a <= self.bound_a * (1 + tol) + tol)


def convergent_height_report(D: Poly, M: int) -> List[HeightReport]:
    """Heights of p_m, q_m, a_m for m = 0..M against their upper bounds."""
    d = int(D.deg) // 2
    K = height_constant(D)
    st = cf_init_sqrt(D)
    quot = []
    for _ in range(M + 1):
        a, st = cf_step(st)
        quot.append(a)
    convs = convergents(quot)
    out = []
    prev_hq = 0.0
    for m, c in enumerate(convs):
        n = int(c.q.deg)
        hp, hq, ha = proj_height(c.p), proj_height(c.q), proj_height(quot[m])
        bq = (n * d + (3 * n * n + n) / 2) * K
        bp = ((n + 1) * d + 1.5 * (n * n + n)) * K
        ba = hq + int(quot[m].deg) * (math.log(2) + prev_hq) if m > 0 else bp
        out.append(HeightReport(m, n, hp, hq, ha, bp, bq, ba))
        prev_hq = hq
    return out


def growth_exponent(D: Poly, M: int) -> float:
    """Least-squares slope of log h_aff(q_m) against log deg q_m.

    Only an empirical record; convergents with deg q_m < 2 or zero
    height are left out of the fit.
    """
    st = cf_init_sqrt(D)
    quot = []
    for _ in range(M + 1):
        a, st = cf_step(st)
        quot.append(a)
    pts = []
    for c in convergents(quot):
        n, h = int(c.q.deg), aff_height(c.q)
        if n >= 2 and h > 0:
            pts.append((math.log(n), math.log(h)))
    if len(pts) < 2:
        raise ValueError("not enough convergents to fit a growth exponent")
    xs, ys = zip(*pts)
    return statistics.linear_regression(xs, ys).slope
