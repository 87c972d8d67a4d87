"""Continued fractions of quadratic Laurent series.

A complete quotient is kept as ``(A + t + sqrt(D)) / s`` with polynomials
``t`` and ``s`` where ``A`` is the polynomial part of ``sqrt(D)``.  One step
is a single polynomial division::

    2A + t_n = a_n * s_n - t_{n+1}
    s_{n+1}  = (D - (A + t_{n+1})^2) / s_n
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence

from .errors import (
    InternalError,
    PositiveOrder,
    RationalInput,
    SquareD,
    ZeroInput,
    PeriodNotFound,
)
from .fields import Field, QQ
from .poly import Poly, complete_square


@dataclass(frozen=True)
class CFState:
    """Complete quotient ``alpha_n = (A + t + sqrt(D)) / s``."""

    D: Poly
    A: Poly
    t: Poly
    s: Poly
    n: int = 0

    @property
    def field(self) -> Field:
        return self.D.field

    @property
    def r(self) -> Poly:
        return self.A + self.t

    def check(self) -> None:
        _, rem = (self.D - self.r * self.r).divmod(self.s)
        if rem:
            raise InternalError(f"s_{self.n} does not divide D - r^2")


@dataclass(frozen=True)
class Convergent:
    n: int
    p: Poly
    q: Poly


def cf_init_sqrt(D: Poly, lc_root=None) -> CFState:
    """State for sqrt(D); ``lc_root`` selects the branch by its leading coefficient."""
    A, omega = complete_square(D)
    if lc_root is not None and A.lc != lc_root:
        if A.lc != -lc_root:
            raise ValueError("lc_root is not a square root of LC(D)")
        A = -A
    if D.deg <= 0:
        raise SquareD("constant D")
    if not omega:
        raise SquareD(f"{D} is a perfect square")
    one = Poly.const(D.field, 1)
    return CFState(D, A, -A, one, 0)


def cf_init_general(u: Poly, v: Poly, w: Poly, D: Poly) -> CFState:
    """State for ``alpha = (u + v*sqrt(D)) / w``.

    The numerator is rewritten as ``r + sqrt(D')`` with ``D' = v^2 D`` and,
    when ``w`` does not divide ``D' - u^2``, everything is scaled by ``w``.
    """
    fld = D.field
    if not v:
        raise RationalInput("v = 0: alpha is rational")
    if not w:
        raise ZeroInput("w = 0")
    A0, omega = complete_square(D)
    if not omega:
        raise SquareD(f"{D} is a perfect square")
    Dt = v * v * D
    r, s = u, w
    if (Dt - r * r) % s:
        Dt = Dt * (w * w)
        r = u * w
        s = w * w
    At, _ = complete_square(Dt)
    # sqrt(Dt) must be the branch v * w^k * sqrt(D); otherwise flip signs
    want = v.lc * A0.lc * (w.lc if s != w else fld.one)
    if At.lc != want:
        r, s = -r, -s
    num = r + At
    num_deg = int(num.deg) if num else -1
    if num_deg < s.deg:
        raise PositiveOrder("alpha has positive order at infinity; invert it first")
    return CFState(Dt, At, r - At, s, 0)


def cf_step(state: CFState):
    """Return ``(a_n, next_state)``."""
    A, t, s, D = state.A, state.t, state.s, state.D
    a, rem = (A + A + t).divmod(s)
    t1 = -rem
    r1 = A + t1
    s1, chk = (D - r1 * r1).divmod(s)
    if chk:
        raise InternalError(f"exact division failed at step {state.n}")
    return a, CFState(D, A, t1, s1, state.n + 1)


def expand(state: CFState, steps: int):
    """Partial quotients a_0..a_{steps-1} and the states alpha_0..alpha_steps."""
    quotients, states = [], [state]
    for _ in range(steps):
        a, state = cf_step(state)
        quotients.append(a)
        states.append(state)
    return quotients, states


def partial_quotients(D: Poly, steps: int) -> List[Poly]:
    return expand(cf_init_sqrt(D), steps)[0]


def convergents(quotients: Sequence[Poly]) -> List[Convergent]:
    """Canonical convergents (p_n, q_n) for n = 0..len-1."""
    if not quotients:
        return []
    fld = quotients[0].field
    one, zero = Poly.const(fld, 1), Poly.zero(fld)
    p_prev, q_prev = one, zero
    p, q = quotients[0], one
    out = [Convergent(0, p, q)]
    for n, a in enumerate(quotients[1:], start=1):
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append(Convergent(n, p, q))
    return out


def is_sigma_reduced(state: CFState) -> bool:
    return state.t.deg < state.s.deg < state.A.deg


def cf_rational(p: Poly, q: Poly) -> List[Poly]:
    """Finite continued fraction of p/q via the Euclidean algorithm."""
    if not q:
        raise ZeroInput("denominator is zero")
    out = []
    while q:
        a, r = p.divmod(q)
        out.append(a)
        p, q = q, r
    return out


def evaluate_cf(quotients: Sequence[Poly]):
    """(p, q) with p/q = [a_0; a_1, ...]."""
    c = convergents(quotients)[-1]
    return c.p, c.q


def scale_cf(quotients: Sequence[Poly], mu) -> List[Poly]:
    """Partial quotients of mu * alpha given those of alpha."""
    if mu == 0:
        raise ZeroInput("mu = 0")
    inv = 1 / mu if not hasattr(mu, "modulus") else mu ** -1
    return [a * (mu if k % 2 == 0 else inv) for k, a in enumerate(quotients)]


# ---------------------------------------------------------------------------
# periods


@dataclass
class PeriodReport:
    found: bool
    quasi_period: Optional[int] = None
    period: Optional[int] = None
    mu: object = None
    preperiod: Optional[int] = None
    max_steps: int = 0
    quotients: List[Poly] = dc_field(default_factory=list)
    states: List[CFState] = dc_field(default_factory=list)

    @property
    def status(self) -> str:
        return "Found" if self.found else f"NotFoundWithin({self.max_steps})"


def _mult_order(mu, fld: Field) -> Optional[int]:
    if mu == 1:
        return 1
    if fld.char == 0:
        return 2 if mu == -1 else None
    k, x = 1, mu
    while x != 1:
        x = x * mu
        k += 1
    return k


def finite_field_bound(fld: Field, d: int) -> int:
    q = fld.char
    return (q ** (2 * d) - 1) // (q + 1)


def default_max_steps(D: Poly, horizon: int = 5) -> int:
    if D.field.char:
        return finite_field_bound(D.field, int(D.deg) // 2) + 2
    return 10 * int(D.deg) * horizon


def detect_period(state: CFState, max_steps: Optional[int] = None) -> PeriodReport:
    """Find the least quasi-period among sigma-reduced complete quotients.

    ``mu`` is defined by ``alpha_{k+l} = mu * alpha_k`` for k at least the
    preperiod.
    """
    D = state.D
    if max_steps is None:
        max_steps = default_max_steps(D)
    fld = D.field
    is_sqrt = state.n == 0 and state.t == -state.A and state.s == 1
    quotients: List[Poly] = []
    states = [state]
    seen = {}
    cur = state
    for _ in range(max_steps):
        n = cur.n
        if is_sqrt and n >= 1 and cur.s.deg == 0:
            ell = n
            mu = cur.s.lc
            return _finish(PeriodReport(True, ell, None, mu, 1, max_steps, quotients, states), fld)
        if not is_sqrt and is_sigma_reduced(cur):
            key = (cur.t.key(), cur.s.monic().key())
            hit = seen.get(key)
            if hit is not None:
                k = hit
                ell = n - k
                mu = states[k].s.lc / cur.s.lc
                return _finish(PeriodReport(True, ell, None, mu, k, max_steps, quotients, states), fld)
            seen[key] = n
        a, cur = cf_step(cur)
        quotients.append(a)
        states.append(cur)
    return PeriodReport(False, max_steps=max_steps, quotients=quotients, states=states)


def _finish(rep: PeriodReport, fld: Field) -> PeriodReport:
    ell, mu = rep.quasi_period, rep.mu
    if ell % 2:
        rep.period = ell if mu == 1 else 2 * ell
    else:
        o = _mult_order(mu, fld)
        rep.period = None if o is None else ell * o
    return rep


def palindrome_check(rep: PeriodReport, quotients: Sequence[Poly]) -> bool:
    """Check the symmetry of the quasi-period of sqrt(D).

    ``quotients`` are those of sqrt(D); the inner block a_1..a_{l-1}
    satisfies ``a_k = mu^((-1)^k) * a_{l-k}`` up to the normalisation of
    the scaling constant.
    """
    ell, mu = rep.quasi_period, rep.mu
    if ell is None:
        return False
    if ell <= 1:
        return True
    if len(quotients) < ell:
        raise ValueError("need at least one quasi-period of partial quotients")
    inv = mu ** -1 if hasattr(mu, "modulus") else 1 / mu
    for k in range(1, ell):
        f = mu if k % 2 == 0 else inv
        if quotients[k] != quotients[ell - k] * f:
            return False
    return True
