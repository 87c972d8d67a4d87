"""Reduction of the continued fraction of sqrt(D) modulo a discrete valuation.

Everything is derived from one exact expansion over the base field:
partial quotients a_n, convergents (p_n, q_n) and their Gauss norms.  The
normalised residual ``theta_n = (p_n - alpha q_n) / pi^{e_n}`` has Gauss
norm 0 and leading coefficient ``(-1)^{n+1} / (LC(q_{n+1}) pi^{e_n})``, so
its leading-coefficient valuation is known exactly without any series work.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Union

from .cf import CFState, cf_init_sqrt, cf_step, convergents, detect_period
from .errors import InternalError, NegativeValuation, SquareD, UnsupportedValuation, WindowError
from .fields import INF, PAdic, ValuationSpec, as_valuation
from .laurent import LaurentSeries, sqrt_series
from .poly import Poly, complete_square, gauss_norm, lc_val, reduce_poly

NEG_INF = -math.inf


# ---------------------------------------------------------------------------
# classification of D


@dataclass(frozen=True)
class DClass:
    kind: str  # "Square", "NonSquare" or "Unsupported"
    reason: str = ""

    def __str__(self):
        return self.kind if not self.reason else f"{self.kind}({self.reason})"


def _valuation(nu) -> Optional[ValuationSpec]:
    try:
        return as_valuation(nu)
    except UnsupportedValuation:
        return None


def reduce_D_classify(D: Poly, nu) -> DClass:
    spec = _valuation(nu)
    if spec is None:
        return DClass("Unsupported", "residue characteristic 2 or not a prime")
    if gauss_norm(D, spec) < 0:
        return DClass("Unsupported", "D has negative Gauss norm")
    if lc_val(D, spec) > 0:
        return DClass("Unsupported", "leading coefficient of D is not a unit")
    _, omega = complete_square(D)
    if gauss_norm(omega, spec) > 0:
        return DClass("Square")
    return DClass("NonSquare")


# ---------------------------------------------------------------------------
# exact expansion data


@dataclass(frozen=True)
class NormalizedConvergent:
    n: int
    p_hat: Poly
    q_hat: Poly
    e: int
    theta_lc_val: int


@dataclass(frozen=True)
class WindowEstimate:
    value: float
    window: int

    def __str__(self):
        return f"~{_fmt_val(self.value)}"


NuAlpha = Union[int, float, WindowEstimate]


def _fmt_val(v) -> str:
    if v == NEG_INF:
        return "-inf"
    if v == INF:
        return "inf"
    return str(int(v))


class Expansion:
    """Lazily extended expansion of sqrt(D) with valuation bookkeeping."""

    def __init__(self, D: Poly, nu):
        self.D = D
        self.nu = as_valuation(nu)
        self.state = cf_init_sqrt(D)
        self.A = self.state.A
        self.states: List[CFState] = [self.state]
        self.a: List[Poly] = []
        self.p: List[Poly] = []
        self.q: List[Poly] = []
        self.e: List[int] = []
        self._sqrt: Optional[LaurentSeries] = None

    def ensure(self, n: int) -> None:
        """Make a_0..a_n and (p, q)_0..n available."""
        fld = self.D.field
        while len(self.a) <= n:
            a, nxt = cf_step(self.states[-1])
            self.a.append(a)
            self.states.append(nxt)
            k = len(self.a) - 1
            if k == 0:
                p, q = a, Poly.const(fld, 1)
            elif k == 1:
                p, q = a * self.p[0] + 1, a
            else:
                p = a * self.p[-1] + self.p[-2]
                q = a * self.q[-1] + self.q[-2]
            self.p.append(p)
            self.q.append(q)
            ep, eq = gauss_norm(p, self.nu), gauss_norm(q, self.nu)
            if ep != eq:
                raise InternalError(f"nu(p_{k}) = {ep} differs from nu(q_{k}) = {eq}")
            self.e.append(eq)

    def e_at(self, k: int) -> int:
        if k < 0:
            return 0
        self.ensure(k)
        return self.e[k]

    def theta_lc_val(self, k: int) -> int:
        """nu(LC theta_k); theta_{-1} = 1."""
        if k < -1:
            raise IndexError(k)
        self.ensure(k + 1)
        return -lc_val(self.q[k + 1], self.nu) - self.e_at(k)

    def normalized(self, k: int) -> NormalizedConvergent:
        self.ensure(k + 1)
        g = self.nu.pi_power(self.e[k])
        inv = self.D.field.one / g
        return NormalizedConvergent(k, self.p[k] * inv, self.q[k] * inv, self.e[k],
                                    self.theta_lc_val(k))

    def sqrt_series(self, W: int) -> LaurentSeries:
        if self._sqrt is None or self._sqrt.window < W:
            self._sqrt = sqrt_series(self.D, W)
        return self._sqrt

    def theta_series(self, k: int, W: int) -> LaurentSeries:
        """theta_k over a window of W coefficients of sqrt(D)."""
        self.ensure(k + 1)
        S = self.sqrt_series(W)
        r = LaurentSeries.from_poly(self.p[k], S.lo + int(self.q[k].deg)) - S * self.q[k]
        return r.scale(self.D.field.one / self.nu.pi_power(self.e[k]))

    def alpha_series(self, n: int, W: int) -> LaurentSeries:
        """alpha_n = (A + t_n + sqrt(D)) / s_n over a window."""
        self.ensure(n)
        st = self.states[n]
        S = self.sqrt_series(W)
        num = S + st.r
        return num * LaurentSeries.from_poly(st.s, S.lo).inverse()

    def nu_alpha(self, n: int, W: int) -> NuAlpha:
        """Gauss norm of alpha_n: exact, -inf, or a window estimate."""
        if n == 0:
            return 0
        if self.theta_lc_val(n - 1) == 0:
            return self.e_at(n - 2) - self.e_at(n - 1)
        if self.theta_lc_val(n - 2) == 0:
            return NEG_INF
        est = gauss_norm(self.alpha_series(n, W), self.nu)
        return WindowEstimate(est, W)


def normalized_convergents(D: Poly, nu, N: int) -> List[NormalizedConvergent]:
    ex = Expansion(D, nu)
    return [ex.normalized(k) for k in range(N + 1)]


# ---------------------------------------------------------------------------
# classification of the continued fraction


@dataclass(frozen=True)
class GoodThrough:
    n: int
    conclusive: bool = False


@dataclass(frozen=True)
class BadAt:
    n: int


@dataclass(frozen=True)
class Unsupported:
    reason: str


def classify_reduction(D: Poly, nu, N: int):
    """First index n <= N with bad reduction, or GoodThrough(N).

    If sqrt(D) is periodic with quasi-period <= N, one quasi-period plus a
    unit scaling constant settle good reduction for every index.
    """
    cls = reduce_D_classify(D, nu)
    if cls.kind == "Unsupported":
        return Unsupported(cls.reason)
    if cls.kind == "Square":
        return BadAt(1)
    spec = as_valuation(nu)
    st = cf_init_sqrt(D)
    for n in range(N + 1):
        a, nxt = cf_step(st)
        if gauss_norm(a, spec) < 0 or lc_val(a, spec) != 0:
            return BadAt(n)
        if n >= 1 and nxt.s.deg == 0:
            # quasi-period complete: alpha_{n+2} = s * alpha_1
            if spec.val(nxt.s.lc) == 0:
                return GoodThrough(N, conclusive=True)
        st = nxt
    return GoodThrough(N, conclusive=False)


# ---------------------------------------------------------------------------
# the lambda map


@dataclass
class LambdaMap:
    lam: List[int]
    deg_h: List[int]
    residue_quotients: List[Poly]
    u: List[Poly]
    v: List[Poly]
    deg_q_red: List[int]

    def fibres(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for n, m in enumerate(self.lam):
            out.setdefault(m, []).append(n)
        return out

    def validate(self) -> None:
        lam = self.lam
        if lam and lam[0] != 0:
            raise InternalError("lambda(0) must be 0")
        for n in range(1, len(lam)):
            if lam[n] - lam[n - 1] not in (0, 1):
                raise InternalError(f"lambda not monotone and gap-free at {n}")
        for m, ns in self.fibres().items():
            n0 = ns[0]
            if self.v[m].deg != self.deg_q_red[n0] or self.deg_h[n0] != 0:
                raise InternalError(f"minimal fibre element {n0} fails the degree check")


class _ResidueCF:
    def __init__(self, Dbar: Poly, lc_root):
        self.state = cf_init_sqrt(Dbar, lc_root)
        one = Poly.const(Dbar.field, 1)
        self.c: List[Poly] = []
        self.u: List[Poly] = []
        self.v: List[Poly] = []
        self._pp, self._qp = one, Poly.zero(Dbar.field)

    def ensure(self, m: int):
        while len(self.c) <= m:
            c, self.state = cf_step(self.state)
            self.c.append(c)
            if len(self.u) == 0:
                u, v = c, Poly.const(c.field, 1)
            else:
                u = c * self.u[-1] + (self.u[-2] if len(self.u) > 1 else self._pp)
                v = c * self.v[-1] + (self.v[-2] if len(self.v) > 1 else self._qp)
            self.u.append(u)
            self.v.append(v)


def compute_lambda(D: Poly, nu, N: int, expansion: Optional[Expansion] = None) -> LambdaMap:
    ex = expansion or Expansion(D, nu)
    spec = ex.nu
    cls = reduce_D_classify(D, spec)
    if cls.kind != "NonSquare":
        raise SquareD(f"lambda map needs a non-square reduction, got {cls}")
    Dbar = reduce_poly(D, spec)
    res = _ResidueCF(Dbar, spec.reduce(ex.A.lc))
    lam: List[int] = []
    deg_h: List[int] = []
    deg_qr: List[int] = []
    m = 0
    for n in range(N + 1):
        nc = ex.normalized(n)
        P = reduce_poly(nc.p_hat, spec)
        Q = reduce_poly(nc.q_hat, spec)
        while True:
            res.ensure(m)
            if res.v[m].deg > Q.deg:
                raise InternalError(f"no residue convergent matches n = {n}")
            if not (P * res.v[m] - Q * res.u[m]):
                break
            m += 1
        lam.append(m)
        deg_h.append(int(Q.deg - res.v[m].deg))
        deg_qr.append(int(Q.deg))
    out = LambdaMap(lam, deg_h, res.c, res.u, res.v, deg_qr)
    out.validate()
    return out


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class ValuationRow:
    n: int
    lam: int
    nu_alpha: NuAlpha
    nu_a: int
    nu_lc_a: int
    nu_q: int
    nu_lc_q: int

    def cells(self) -> List[str]:
        na = str(self.nu_alpha) if isinstance(self.nu_alpha, WindowEstimate) else _fmt_val(self.nu_alpha)
        return [str(self.n), str(self.lam), na] + [
            _fmt_val(x) for x in (self.nu_a, self.nu_lc_a, self.nu_q, self.nu_lc_q)]

    def exactness(self) -> str:
        if isinstance(self.nu_alpha, WindowEstimate):
            return "window"
        return "exact"


@dataclass(frozen=True)
class DegreeRow:
    n: int
    m: int
    deg_a: int
    deg_c: int
    deg_q: int
    deg_qred: int
    deg_v: int

    def cells(self) -> List[str]:
        return [str(x) for x in (self.n, self.m, self.deg_a, self.deg_c, self.deg_q,
                                 self.deg_qred, self.deg_v)]


VALUATION_HEADER = ["n", "lambda", "nu_alpha", "nu_a", "nu_lc_a", "nu_q", "nu_lc_q"]
DEGREE_HEADER = ["n", "m", "deg_a", "deg_c", "deg_q", "deg_qred", "deg_v"]


def default_window(D: Poly, N: int) -> int:
    return 2 * int(D.deg) + 2 * N + 8


def valuation_table(D: Poly, nu, N: int, W: Optional[int] = None,
                    expansion: Optional[Expansion] = None,
                    lam: Optional[LambdaMap] = None) -> List[ValuationRow]:
    """Rows n = 0..N-1."""
    ex = expansion or Expansion(D, nu)
    W = W or default_window(D, N)
    lam = lam or compute_lambda(D, ex.nu, N - 1, ex)
    rows = []
    for n in range(N):
        ex.ensure(n + 1)
        spec = ex.nu
        rows.append(ValuationRow(
            n, lam.lam[n], ex.nu_alpha(n, W),
            gauss_norm(ex.a[n], spec), lc_val(ex.a[n], spec),
            ex.e[n], lc_val(ex.q[n], spec)))
    return rows


def degree_table(D: Poly, nu, N: int, expansion: Optional[Expansion] = None,
                 lam: Optional[LambdaMap] = None) -> List[DegreeRow]:
    ex = expansion or Expansion(D, nu)
    lam = lam or compute_lambda(D, ex.nu, N - 1, ex)
    rows = []
    for n in range(N):
        m = lam.lam[n]
        rows.append(DegreeRow(n, m, int(ex.a[n].deg), int(lam.residue_quotients[m].deg),
                              int(ex.q[n].deg), lam.deg_q_red[n], int(lam.v[m].deg)))
    return rows


# ---------------------------------------------------------------------------
# genus one


@dataclass
class Genus1Pattern:
    ell: int
    unbounded: List[int]
    f: List[int]
    F: List[int]
    predicted: List[tuple]
    measured: List[tuple]
    mismatches: List[int] = dc_field(default_factory=list)
    bound_violations: List[int] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.bound_violations


def genus1_pattern(D: Poly, nu, N: int, expansion: Optional[Expansion] = None) -> Genus1Pattern:
    """Compare measured Gauss norms with the genus-one recursion, rows 0..N-1.

    f_n = nu(LC theta_{n-1}), F_0 = 0, F_n = -(F_{n-1} + f_n), and
    nu(a_n) = 2(F_{n-2} + F_n), nu(LC a_n) = nu(a_n) + f_{n-1} + f_n,
    nu(q_n) = 2 F_n, nu(LC q_n) = nu(q_n) + f_n.
    """
    if D.deg != 4:
        raise ValueError("genus-one patterns need deg D = 4")
    ex = expansion or Expansion(D, nu)
    spec = ex.nu
    cls = reduce_D_classify(D, spec)
    if cls.kind != "NonSquare":
        raise ValueError(f"needs a non-square reduction, got {cls}")
    Dbar = reduce_poly(D, spec)
    rep = detect_period(cf_init_sqrt(Dbar, spec.reduce(ex.A.lc)))
    if not rep.found:
        raise ValueError("residue continued fraction is not periodic within the bound")
    ell = rep.quasi_period
    ex.ensure(N)
    f = [0] + [ex.theta_lc_val(n - 1) for n in range(1, N)]
    F = [0]
    for n in range(1, N):
        F.append(-(F[-1] + f[n]))

    def Fi(k):
        return F[k] if k >= 0 else 0

    def fi(k):
        return f[k] if k >= 0 else 0

    pred, meas, bad, viol = [], [], [], []
    for n in range(N):
        na = 2 * (Fi(n - 2) + Fi(n))
        p = (na, na + fi(n - 1) + fi(n), 2 * F[n], 2 * F[n] + f[n])
        m = (gauss_norm(ex.a[n], spec), lc_val(ex.a[n], spec), ex.e[n], lc_val(ex.q[n], spec))
        pred.append(p)
        meas.append(m)
        if p != m:
            bad.append(n)
        if ell % 2:
            s = (-1) ** n
            lo_a = 2 * ((n - 1) // (ell + 1) + (n + 1) // (ell + 1))
            lo_q = 2 * ((n + 1) // (ell + 1))
            if s * m[0] < lo_a or s * m[2] < lo_q:
                viol.append(n)
    U = [j * (ell + 1) - 1 for j in range(1, N // (ell + 1) + 2) if j * (ell + 1) - 1 < N]
    positive = [n for n in range(N) if f[n] > 0]
    if positive != U:
        bad.append(-1)
    return Genus1Pattern(ell, U, f, F, pred, meas, bad, viol)


# ---------------------------------------------------------------------------
# degree two


@dataclass
class Deg2Report:
    A: Poly
    omega: object
    quotients: List[Poly]
    nu_a: List[int]
    nu_q: List[int]
    matches_engine: bool


def deg2_closed_form(D: Poly, nu, N: int = 10) -> Deg2Report:
    """sqrt(D) for deg D = 2: a_0 = A, then 2A/omega and 2A alternating."""
    if D.deg != 2:
        raise ValueError("deg D must be 2")
    A, om = complete_square(D)
    if not om:
        raise SquareD(f"{D} is a perfect square")
    omega = om.coeffs[0]
    spec = as_valuation(nu)
    quot = [A] + [A * 2 / omega if k % 2 else A * 2 for k in range(1, N)]
    vo = spec.val(omega)
    nu_a = [gauss_norm(a, spec) for a in quot]
    nu_q = [-((n + 1) // 2) * vo for n in range(N)]
    eng, _ = _engine(D, N)
    qs = [c.q for c in convergents(eng)]
    ok = eng == quot
    if gauss_norm(A, spec) == 0 and vo >= 0:
        ok = ok and all(gauss_norm(q, spec) == v for q, v in zip(qs, nu_q))
    return Deg2Report(A, omega, quot, nu_a, nu_q, ok)


def _engine(D, N):
    st = cf_init_sqrt(D)
    out = []
    for _ in range(N):
        a, st = cf_step(st)
        out.append(a)
    return out, st


# ---------------------------------------------------------------------------
# quotients of power series


def series_quotient(c, a, N: int):
    """First N coefficients of b = c / a for power series c, a (a_0 != 0).

    b_n = (c_n - sum_{i>=1} a_i b_{n-i}) / a_0.
    """
    b = []
    for n in range(N):
        s = c[n] if n < len(c) else 0
        for i in range(1, min(n, len(a) - 1) + 1):
            s = s - a[i] * b[n - i]
        b.append(s / a[0])
    return b
