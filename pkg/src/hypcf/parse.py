"""Text parser for polynomials in ``x`` with coefficients in Q, F_p or Q(t).

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' INT]
    atom   := INT | 'x' | 't' | '(' expr ')'

Division is only allowed by expressions free of ``x``.
"""
from __future__ import annotations

from fractions import Fraction

from flint import fmpq_poly

from .errors import ParseError, FieldMismatch
from .fields import QQ, QQt, Field, RatFunc
from .poly import Poly


class _Parser:
    def __init__(self, text: str, field: Field):
        self.text = text
        self.pos = 0
        self.field = field

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, msg):
        raise ParseError(msg, self.pos)

    def expect(self, ch):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Poly:
        if not self.peek():
            self.fail("empty input")
        p = self.expr()
        if self.peek():
            self.fail(f"unexpected {self.peek()!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-") and self.peek():
            op = self.peek()
            self.pos += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() in ("*", "/") and self.peek():
            op = self.peek()
            self.pos += 1
            at = self.pos
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    raise ParseError("division by a polynomial in x", at)
                if not rhs:
                    raise ParseError("division by zero", at)
                acc = acc / rhs.coeffs[0]
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.peek()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.fail("expected exponent")
            base = base ** int(self.text[start:self.pos])
        return base

    def atom(self) -> Poly:
        ch = self.peek()
        if not ch:
            self.fail("unexpected end of input")
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Poly.const(self.field, int(self.text[start:self.pos]))
        if ch in "xX":
            self.pos += 1
            return Poly.x(self.field)
        if ch == "t":
            if self.field != QQt:
                self.fail("variable t requires the Q(t) field")
            self.pos += 1
            return Poly.const(self.field, RatFunc(fmpq_poly([0, 1])))
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        self.fail(f"unexpected {ch!r}")


def parse_poly(text: str, field: Field | None = None) -> Poly:
    """Parse ``text``; the field defaults to Q, or Q(t) when ``t`` occurs."""
    if field is None:
        field = QQt if "t" in text else QQ
    try:
        return _Parser(text, field).parse()
    except ZeroDivisionError as exc:
        raise FieldMismatch(f"coefficient not in {field}: {exc}") from exc


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}", 0) from exc
