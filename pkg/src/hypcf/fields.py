"""Exact coefficient fields and discrete valuations on them.

Three fields are supported:

* ``QQ``  -- the rationals, elements are :class:`fractions.Fraction`.
* ``PrimeField(p)`` -- elements are ``flint.nmod`` residues in ``[0, p)``.
* ``QQt`` -- rational functions in ``t`` over the rationals, elements are
  :class:`RatFunc` (coprime numerator/denominator, monic denominator).

Valuations are :class:`PAdic` (``nu_p`` on QQ, residue field F_p) and
:class:`OrdAt` (order of vanishing at ``t = t0`` on QQt, residue field QQ).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from flint import fmpq, fmpq_poly, fmpz, nmod

from .errors import (
    FieldMismatch,
    NegativeValuation,
    UnsupportedValuation,
    ZeroInput,
)

INF = math.inf


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def _fmpq(x) -> fmpq:
    x = _to_fraction(x)
    return fmpq(x.numerator, x.denominator)


class RatFunc:
    """Element of QQ(t) stored as coprime ``num/den`` with ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([_fmpq(num)])
        if den is None:
            den = fmpq_poly([1])
        elif not isinstance(den, fmpq_poly):
            den = fmpq_poly([_fmpq(den)])
        if not _normalized:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                den = fmpq_poly([1])
            else:
                g = num.gcd(den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den

    @classmethod
    def t(cls) -> "RatFunc":
        return cls(fmpq_poly([0, 1]), None, True)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, fmpq)):
            return RatFunc(fmpq_poly([_fmpq(other)]), None, True)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc(fmpq_poly([]), None, True)
        if o.den.is_one() and o.num.degree() == 0:
            c = o.num.leading_coefficient()
            return RatFunc(self.num * c, self.den, True)
        # cross-cancel before multiplying to keep degrees low
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        num = (self.num // g1) * (o.num // g2)
        den = (self.den // g2) * (o.den // g1)
        return RatFunc(num, den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (tuple(str(c) for c in self.num.coeffs()),
                tuple(str(c) for c in self.den.coeffs()))

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        return _to_fraction(self.num.leading_coefficient()) if not self.num.is_zero() else Fraction(0)

    def __call__(self, t0) -> Fraction:
        t0 = _fmpq(t0)
        d = self.den(t0)
        if d == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return _to_fraction(self.num(t0) / d)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return format_ratfunc(self)


def _fmt_qpoly(p: fmpq_poly, var: str = "t") -> str:
    coeffs = [_to_fraction(c) for c in p.coeffs()]
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mon = var if k == 1 else f"{var}^{k}"
            body = mon if a == 1 else f"{a}*{mon}"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f"{sign}{body}"
    return out


def format_ratfunc(x: RatFunc) -> str:
    n = _fmt_qpoly(x.num)
    if x.den.is_one():
        return n
    d = _fmt_qpoly(x.den)
    if any(ch in n[1:] for ch in "+-"):
        n = f"({n})"
    if not re.fullmatch(r"t(\^\d+)?", d):
        d = f"({d})"
    return f"{n}/{d}"


FieldElement = Union[Fraction, nmod, RatFunc]


class Field:
    """Descriptor for an exact coefficient field."""

    name = "field"
    char = 0

    def elem(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.elem(0)

    @property
    def one(self):
        return self.elem(1)

    def is_zero(self, x) -> bool:
        return x == 0

    def key(self, x):
        return x

    def sqrt(self, x):
        """Canonical square root of ``x`` or None."""
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def fmt(self, x) -> str:
        return str(x)

    def __repr__(self):
        return self.name


class _Rationals(Field):
    name = "Q"
    char = 0

    def elem(self, x):
        if isinstance(x, RatFunc):
            return x.constant_value()
        return _to_fraction(x)

    def contains(self, x):
        return isinstance(x, (Fraction, int))

    def sqrt(self, x):
        x = _to_fraction(x)
        if x < 0:
            return None
        n, d = x.numerator, x.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def __eq__(self, other):
        return isinstance(other, _Rationals)

    def __hash__(self):
        return hash("Q")


QQ = _Rationals()


class PrimeField(Field):
    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not fmpz(p).is_prime():
            raise UnsupportedValuation(f"{p} is not prime")
        self.p = p
        self.char = p
        self.name = f"F_{p}"

    def elem(self, x):
        if isinstance(x, nmod):
            if x.modulus() != self.p:
                raise FieldMismatch(f"element of F_{x.modulus()} used in F_{self.p}")
            return x
        if isinstance(x, (Fraction, fmpq)):
            x = _to_fraction(x)
            if x.denominator % self.p == 0:
                raise NegativeValuation(f"{x} has a pole at {self.p}")
            return nmod(x.numerator, self.p) / nmod(x.denominator, self.p)
        return nmod(int(x), self.p)

    def contains(self, x):
        return isinstance(x, nmod) and x.modulus() == self.p

    def key(self, x):
        return int(x)

    def sqrt(self, x):
        x = self.elem(x)
        if int(x) == 0:
            return x
        try:
            r = int(x.sqrt())
        except Exception:
            return None
        return nmod(min(r, self.p - r), self.p)

    def fmt(self, x):
        return str(int(x))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


class _RationalFunctions(Field):
    name = "Q(t)"
    char = 0

    def elem(self, x):
        if isinstance(x, RatFunc):
            return x
        return RatFunc(fmpq_poly([_fmpq(x)]), None, True)

    def contains(self, x):
        return isinstance(x, RatFunc)

    def key(self, x):
        return x.key()

    def sqrt(self, x):
        x = self.elem(x)
        if not x:
            return x
        rn, rd = _qpoly_sqrt(x.num), _qpoly_sqrt(x.den)
        if rn is None or rd is None:
            return None
        r = RatFunc(rn, rd)
        if r.num.leading_coefficient() < 0:
            r = -r
        return r

    def fmt(self, x):
        return format_ratfunc(x)

    def __eq__(self, other):
        return isinstance(other, _RationalFunctions)

    def __hash__(self):
        return hash("Q(t)")


def _qpoly_sqrt(f: fmpq_poly):
    try:
        r = f.sqrt()
    except Exception:
        return None
    if r is None or r * r != f:
        return None
    return r


QQt = _RationalFunctions()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_of(x) -> Field:
    if isinstance(x, (Fraction, int)):
        return QQ
    if isinstance(x, nmod):
        return GF(x.modulus())
    if isinstance(x, RatFunc):
        return QQt
    raise FieldMismatch(f"unsupported element type {type(x).__name__}")


def parse_field(spec: str) -> Field:
    """``Q``, ``Fp:<p>`` or ``Qt``."""
    s = spec.strip()
    if s in ("Q", "QQ"):
        return QQ
    if s in ("Qt", "Q(t)", "QQt"):
        return QQt
    if s.startswith("Fp:") or s.startswith("F:"):
        return GF(int(s.split(":", 1)[1]))
    raise UnsupportedValuation(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# valuations


def _vp_int(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


class ValuationSpec:
    """Discrete valuation with uniformizer of valuation 1."""

    field: Field
    residue: Field

    def val(self, x):
        raise NotImplementedError

    def reduce(self, x):
        raise NotImplementedError

    def pi_power(self, e: int):
        raise NotImplementedError

    def check(self, x):
        if not self.field.contains(x) and not (self.field is QQ and isinstance(x, int)):
            raise FieldMismatch(f"{x!r} is not an element of {self.field}")


@dataclass(frozen=True)
class PAdic(ValuationSpec):
    p: int

    def __post_init__(self):
        if self.p == 2:
            raise UnsupportedValuation("residue characteristic 2 is not supported")
        if self.p < 2 or not fmpz(self.p).is_prime():
            raise UnsupportedValuation(f"{self.p} is not an odd prime")

    @property
    def field(self):
        return QQ

    @property
    def residue(self):
        return GF(self.p)

    def val(self, x):
        self.check(x)
        x = Fraction(x)
        if x == 0:
            return INF
        return _vp_int(x.numerator, self.p) - _vp_int(x.denominator, self.p)

    def reduce(self, x):
        self.check(x)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise NegativeValuation(f"nu_{self.p}({x}) < 0")
        return nmod(x.numerator, self.p) / nmod(x.denominator, self.p)

    def lift(self, x) -> Fraction:
        return Fraction(int(x))

    def pi_power(self, e: int):
        return Fraction(self.p) ** e

    def __str__(self):
        return f"nu_{self.p}"


@dataclass(frozen=True)
class OrdAt(ValuationSpec):
    t0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t0", _to_fraction(self.t0))

    @property
    def field(self):
        return QQt

    @property
    def residue(self):
        return QQ

    @property
    def p(self):
        return None

    def _mult(self, f: fmpq_poly) -> int:
        lin = fmpq_poly([_fmpq(-self.t0), 1])
        e = 0
        while f(_fmpq(self.t0)) == 0:
            f = f // lin
            e += 1
        return e

    def val(self, x):
        self.check(x)
        if not x:
            return INF
        return self._mult(x.num) - self._mult(x.den)

    def reduce(self, x):
        self.check(x)
        if self.val(x) < 0:
            raise NegativeValuation(f"ord_(t-{self.t0})({x}) < 0")
        if not x:
            return Fraction(0)
        return x(self.t0)

    def lift(self, x) -> RatFunc:
        return QQt.elem(x)

    def pi_power(self, e: int):
        return RatFunc(fmpq_poly([_fmpq(-self.t0), 1])) ** e

    def __str__(self):
        return f"ord_(t-{self.t0})"


def as_valuation(nu) -> ValuationSpec:
    if isinstance(nu, ValuationSpec):
        return nu
    return PAdic(int(nu))


def val(x, nu: ValuationSpec):
    """Exact valuation; ``math.inf`` for zero."""
    return nu.val(x)


def reduce_elem(x, nu: ValuationSpec):
    """Image of ``x`` in the residue field (requires ``val(x) >= 0``)."""
    return nu.reduce(x)


def normalize_elem(x, nu: ValuationSpec):
    """Return ``(unit, e)`` with ``x = pi**e * unit``."""
    e = nu.val(x)
    if e == INF:
        raise ZeroInput("cannot normalize zero")
    return x / nu.pi_power(e), e
