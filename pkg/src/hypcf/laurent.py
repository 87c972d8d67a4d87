"""Truncated Laurent series in 1/X with an explicit window of known terms.

A series is stored as ``(lo, coeffs)`` where ``coeffs`` lists the
coefficients of ``X^top, X^(top-1), ..., X^lo`` and every coefficient of
exponent ``>= lo`` is known exactly.  The leading entry is nonzero; a series
that vanishes on its whole window has no coefficients and ``top = lo - 1``.
"""
from __future__ import annotations

from .errors import WindowError, ZeroInput
from .fields import Field, ValuationSpec
from .poly import Poly, complete_square


class LaurentSeries:
    __slots__ = ("field", "lo", "coeffs")

    def __init__(self, field: Field, lo: int, coeffs, _raw: bool = False):
        c = list(coeffs) if _raw else [field.elem(x) for x in coeffs]
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        self.field = field
        self.lo = int(lo)
        self.coeffs = tuple(c[i:])

    @classmethod
    def from_top(cls, field: Field, top: int, coeffs) -> "LaurentSeries":
        return cls(field, top - len(coeffs) + 1, coeffs)

    @classmethod
    def from_poly(cls, p: Poly, lo: int) -> "LaurentSeries":
        top = max(int(p.deg), lo - 1) if p else lo - 1
        c = [p[e] for e in range(top, lo - 1, -1)]
        return cls(p.field, lo, c, True)

    @property
    def top(self) -> int:
        return self.lo + len(self.coeffs) - 1

    @property
    def window(self) -> int:
        return len(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[0] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def order_at_infinity(self) -> int:
        """ord_inf = -top; only meaningful when the series is nonzero."""
        if not self.coeffs:
            raise WindowError("series vanishes on its known window")
        return -self.top

    def coeff(self, e: int):
        if e < self.lo:
            raise WindowError(f"coefficient of X^{e} is below the known window (lo={self.lo})")
        if e > self.top:
            return self.field.zero
        return self.coeffs[self.top - e]

    def restrict(self, lo: int) -> "LaurentSeries":
        """Forget coefficients below ``lo``."""
        if lo < self.lo:
            raise WindowError(f"cannot extend window from {self.lo} to {lo}")
        keep = max(0, self.top - lo + 1)
        return LaurentSeries(self.field, lo, self.coeffs[:keep], True)

    def __neg__(self):
        return LaurentSeries(self.field, self.lo, [-c for c in self.coeffs], True)

    def __add__(self, other):
        if isinstance(other, Poly):
            other = LaurentSeries.from_poly(other, self.lo)
        lo = max(self.lo, other.lo)
        top = max(self.top, other.top)
        c = [self._at(e) + other._at(e) for e in range(top, lo - 1, -1)]
        return LaurentSeries(self.field, lo, c, True)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _at(self, e):
        if e > self.top:
            return self.field.zero
        return self.coeffs[self.top - e]

    def scale(self, c) -> "LaurentSeries":
        c = self.field.elem(c)
        return LaurentSeries(self.field, self.lo, [x * c for x in self.coeffs], True)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not other:
                return LaurentSeries(self.field, self.lo, (), True)
            lo = self.lo + int(other.deg)
            b = list(reversed(other.coeffs))
            top_b = int(other.deg)
        elif isinstance(other, LaurentSeries):
            lo = max(self.top + other.lo, other.top + self.lo)
            b = other.coeffs
            top_b = other.top
        else:
            return self.scale(other)
        a = self.coeffs
        if not a or not b:
            return LaurentSeries(self.field, lo, (), True)
        top = self.top + top_b
        n = top - lo + 1
        out = [self.field.zero] * max(n, 0)
        for i, x in enumerate(a):
            if i >= n:
                break
            if x == 0:
                continue
            for j in range(min(len(b), n - i)):
                out[i + j] = out[i + j] + x * b[j]
        return LaurentSeries(self.field, lo, out, True)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        """Inverse with the same relative precision."""
        if not self.coeffs:
            raise ZeroInput("series vanishes on its known window")
        w = len(self.coeffs)
        a = self.coeffs
        inv0 = self.field.one / a[0]
        b = [inv0]
        for k in range(1, w):
            s = self.field.zero
            for i in range(1, min(k, w - 1) + 1):
                s = s + a[i] * b[k - i]
            b.append(-s * inv0)
        top = -self.top
        return LaurentSeries(self.field, top - w + 1, b, True)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return self.scale(self.field.one / self.field.elem(other))

    def __rtruediv__(self, other):
        inv = self.inverse()
        if isinstance(other, Poly):
            return inv * other
        return inv.scale(other)

    def __eq__(self, other):
        return (isinstance(other, LaurentSeries) and self.lo == other.lo
                and self.coeffs == other.coeffs)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c != 0:
                terms.append(f"({self.field.fmt(c)})*X^{self.top - k}")
        body = " + ".join(terms) if terms else "0"
        return f"LaurentSeries({body} + O(X^{self.lo - 1}))"


def truncate(f: LaurentSeries) -> Poly:
    """Polynomial part of ``f``."""
    if f.top < 0:
        return Poly.zero(f.field)
    if f.lo > 0:
        raise WindowError("window does not reach the constant term")
    return Poly(f.field, [f.coeff(e) for e in range(0, f.top + 1)], True)


def reduce_series(f: LaurentSeries, nu: ValuationSpec) -> LaurentSeries:
    for c in f.coeffs:
        if c != 0 and nu.val(c) < 0:
            from .errors import NegativeValuation
            raise NegativeValuation("series has negative Gauss norm")
    return LaurentSeries(nu.residue, f.lo, [nu.reduce(c) for c in f.coeffs], True)


def _series_div(num: Poly, den: list, top_den: int, lo: int, field: Field):
    """Coefficients of num/den down to exponent ``lo``, den a finite exact series."""
    top = int(num.deg) - top_den
    n = top - lo + 1
    if n <= 0:
        return []
    inv0 = field.one / den[0]
    out = []
    for k in range(n):
        s = num[top + top_den - k] if top + top_den - k >= 0 else field.zero
        for i in range(1, min(k, len(den) - 1) + 1):
            s = s - den[i] * out[k - i]
        out.append(s * inv0)
    return out


def sqrt_series(D: Poly, W: int) -> LaurentSeries:
    """sqrt(D) with ``W`` known coefficients starting at X^(deg D / 2).

    Newton iteration ``S <- (S + D/S)/2`` seeded with the polynomial part,
    run at full target precision until it stops moving, then checked by
    squaring.
    """
    A, _ = complete_square(D)
    fld = D.field
    d = int(A.deg)
    lo = d - W + 1
    half = fld.one / (fld.one + fld.one)
    S = [A[e] for e in range(d, lo - 1, -1)]
    for _ in range(4 * W.bit_length() + 8):
        Q = _series_div(D, S, d, lo, fld)
        nxt = [(s + q) * half for s, q in zip(S, Q)]
        if nxt == S:
            break
        S = nxt
    else:
        raise WindowError("square root iteration did not settle")
    out = LaurentSeries(fld, lo, S, True)
    sq = out * out
    diff = sq - LaurentSeries.from_poly(D, sq.lo)
    if not diff.is_zero():
        raise ArithmeticError("square root verification failed")
    return out
