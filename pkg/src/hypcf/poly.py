"""Dense univariate polynomials in X over an exact field."""
from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import FieldMismatch, NegativeValuation, OddDegree, BadLeadingCoefficient
from .fields import INF, QQ, Field, ValuationSpec, field_of

NEG_INF = -math.inf


class Poly:
    """Polynomial with coefficients stored low degree first.

    ``coeffs`` never ends in a zero, so the zero polynomial has an empty
    tuple and degree ``-inf``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = (), _raw: bool = False):
        self.field = field
        if _raw:
            c = list(coeffs)
        else:
            c = [field.elem(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    # construction helpers
    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, (), True)

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls(field, (field.elem(c),), True)

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (field.zero, field.one), True)

    @classmethod
    def monomial(cls, field: Field, c, k: int) -> "Poly":
        return cls(field, [field.zero] * k + [field.elem(c)], True)

    # basic data
    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def _check(self, other: "Poly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.field, other)

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return Poly(self.field, out, True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs], True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field.elem(other)
            if c == 0:
                return Poly.zero(self.field)
            return Poly(self.field, [x * c for x in self.coeffs], True)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(self.field, out, True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        return self * c

    def divmod(self, other: "Poly"):
        self._check(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        inv = self.field.one / b[-1]
        if len(r) - 1 < db:
            return Poly.zero(self.field), self
        q = [self.field.zero] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if c == 0:
                continue
            c = c * inv
            q[k] = c
            for j in range(db + 1):
                r[k + j] = r[k + j] - c * b[j]
        return Poly(self.field, q, True), Poly(self.field, r[:db], True)

    def __divmod__(self, other):
        return self.divmod(self._lift(other))

    def __floordiv__(self, other):
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(self._lift(other))[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __truediv__(self, c):
        if isinstance(c, Poly):
            if c.is_constant() and c:
                c = c.coeffs[0]
            else:
                return self.exact_div(c)
        c = self.field.elem(c)
        inv = self.field.one / c
        return Poly(self.field, [x * inv for x in self.coeffs], True)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        try:
            return self == Poly.const(self.field, other)
        except Exception:
            return False

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return tuple(self.field.key(c) for c in self.coeffs)

    def monic(self) -> "Poly":
        if not self:
            return self
        return self / self.lc

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(self.field, [c * k for k, c in enumerate(self.coeffs)][1:], True)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def map(self, fn, field: Field) -> "Poly":
        return Poly(field, [fn(c) for c in self.coeffs], True)

    def shift(self, k: int) -> "Poly":
        """Multiply by X**k (k >= 0)."""
        if not self:
            return self
        return Poly(self.field, [self.field.zero] * k + list(self.coeffs), True)

    def __repr__(self):
        return f"Poly({self.field}, {format_poly(self)})"

    def __str__(self):
        return format_poly(self)


def poly(coeffs: Sequence, field: Field = QQ) -> Poly:
    """Build a polynomial from low-to-high coefficients."""
    return Poly(field, coeffs)


def poly_divmod(a: Poly, b: Poly):
    return a.divmod(b)


def format_poly(f: Poly, var: str = "x") -> str:
    """Canonical text form, re-readable by :func:`hypcf.parse.parse_poly`."""
    fld = f.field
    if not f:
        return "0"
    parts = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        s = fld.fmt(c)
        neg = False
        if fld == QQ:
            if c < 0:
                neg = True
                s = fld.fmt(-c)
        elif fld.char == 0:
            if s.startswith("-") and not any(ch in s[1:] for ch in "+-"):
                neg, s = True, s[1:]
            if any(ch in s for ch in "+-/"):
                s = f"({s})"
        if mon:
            body = mon if s == "1" else f"{s}*{mon}"
        else:
            body = s
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


# ---------------------------------------------------------------------------
# valuations of polynomials


def gauss_norm(f, nu: ValuationSpec):
    """Minimum coefficient valuation; ``inf`` for zero.

    Accepts polynomials and Laurent series (the latter only over their
    known window).
    """
    coeffs = f.coeffs
    best = INF
    for c in coeffs:
        if c != 0:
            v = nu.val(c)
            if v < best:
                best = v
    return best


def reduce_poly(f: Poly, nu: ValuationSpec) -> Poly:
    for i, c in enumerate(f.coeffs):
        if c != 0 and nu.val(c) < 0:
            raise NegativeValuation(f"coefficient of x^{i} has negative valuation", index=i)
    return Poly(nu.residue, [nu.reduce(c) for c in f.coeffs], True)


def lc_val(f: Poly, nu: ValuationSpec):
    return nu.val(f.lc) if f else INF


# ---------------------------------------------------------------------------
# completing the square


def complete_square(D: Poly):
    """Return ``(A, Omega)`` with ``D = A^2 + Omega`` and ``deg Omega < deg A``."""
    fld = D.field
    if fld.char == 2:
        raise BadLeadingCoefficient("characteristic 2 is not supported")
    if not D or D.deg % 2:
        raise OddDegree(f"degree {D.deg} is not even")
    d = D.deg // 2
    c = fld.sqrt(D.lc)
    if c is None:
        raise BadLeadingCoefficient(f"leading coefficient {fld.fmt(D.lc)} is not a square")
    a = [fld.zero] * (d + 1)
    a[d] = c
    inv2c = fld.one / (c + c)
    # match the coefficients of X^{2d-1} .. X^{d}
    for k in range(d - 1, -1, -1):
        s = D[d + k]
        for i in range(k + 1, d + 1):
            j = d + k - i
            if k < j <= d:
                s = s - a[i] * a[j]
        a[k] = s * inv2c
    A = Poly(fld, a, True)
    return A, D - A * A


def is_squarefree(f: Poly) -> bool:
    if f.is_constant():
        return True
    return f.gcd(f.derivative()).deg == 0
