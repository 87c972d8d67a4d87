"""Convergents as kernel vectors of a Toeplitz linear system.

For alpha with ord_inf(alpha) = -N, a pair (p, q) with deg q <= n and
ord_inf(p - alpha q) > n is a kernel vector of the matrix built here.
Signed maximal minors give a canonical kernel vector, which is compared
against the convergents from the recursion.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .errors import RankDeficient, WindowError
from .fields import Field, ValuationSpec, as_valuation
from .laurent import LaurentSeries, sqrt_series
from .poly import Poly, gauss_norm, reduce_poly


@dataclass(frozen=True)
class ToeplitzSystem:
    n: int
    N: int
    rows: tuple  # tuple of row tuples
    field: Field

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)


def build_system(alpha: LaurentSeries, n: int) -> ToeplitzSystem:
    """Rows are exponents e = n+N .. -n; columns are P_{n+N}..P_0 then Q_n..Q_0."""
    N = alpha.top
    if alpha.lo > -2 * n:
        raise WindowError(f"series window must reach X^{-2 * n}")
    fld = alpha.field
    zero, one = fld.zero, fld.one
    rows = []
    for i in range(N + 2 * n + 1):
        e = n + N - i
        row = [zero] * (N + n + 1)
        if i <= N + n:
            row[i] = -one
        for k in range(n + 1):
            row.append(alpha.coeff(e - (n - k)))
        rows.append(tuple(row))
    return ToeplitzSystem(n, N, tuple(rows), fld)


def _rref_kernel(rows, field: Field):
    """Rank, pivot columns and one kernel vector (free column set to 1)."""
    m = [list(r) for r in rows]
    ncols = len(m[0])
    piv_cols = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in piv_cols]
    return r, piv_cols, free, m


def bareiss_det(mat, field: Field):
    """Determinant by fraction-free elimination."""
    m = [list(r) for r in mat]
    n = len(m)
    if n == 0:
        return field.one
    sign = 1
    prev = field.one
    for k in range(n - 1):
        if m[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if sw is None:
                return field.zero
            m[k], m[sw] = m[sw], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def kernel_convergent(sys: ToeplitzSystem):
    """(p, q) from the signed maximal minors of the system matrix."""
    fld = sys.field
    rank, piv, free, red = _rref_kernel(sys.rows, fld)
    nrows, ncols = sys.shape
    if rank < nrows:
        raise RankDeficient(f"matrix has rank {rank} < {nrows}", kernel_dim=ncols - rank)
    j = free[0]
    k = [fld.zero] * ncols
    k[j] = fld.one
    for row_i, c in enumerate(piv):
        k[c] = -red[row_i][j]
    minor = [[x for cc, x in enumerate(r) if cc != j] for r in sys.rows]
    dj = bareiss_det(minor, fld)
    scale = dj if j % 2 == 0 else -dj
    vec = [x * scale for x in k]
    NP = sys.N + sys.n + 1
    P = vec[:NP]
    Q = vec[NP:]
    p = Poly(fld, list(reversed(P)), True)
    q = Poly(fld, list(reversed(Q)), True)
    return p, q


def residual(sys: ToeplitzSystem, p: Poly, q: Poly):
    """M_n applied to the coefficient vector of (p, q)."""
    NP = sys.N + sys.n + 1
    vec = [p[NP - 1 - i] for i in range(NP)] + [q[sys.n - k] for k in range(sys.n + 1)]
    out = []
    for row in sys.rows:
        acc = sys.field.zero
        for a, b in zip(row, vec):
            acc = acc + a * b
        out.append(acc)
    return out


def sqrt_system(D: Poly, n: int) -> ToeplitzSystem:
    d = int(D.deg) // 2
    S = sqrt_series(D, d + 2 * n + 1)
    return build_system(S, n)


def proportional(p1: Poly, q1: Poly, p2: Poly, q2: Poly) -> bool:
    """Equality after scaling both pairs to monic q."""
    if not q1 or not q2:
        return False
    c1, c2 = q1.lc, q2.lc
    return p1 / c1 == p2 / c2 and q1 / c1 == q2 / c2


def normalization_check(D: Poly, nu, n: int) -> bool:
    """Minor-based (p, q) for sqrt(D) is integral, and nu(q) = 0 when the
    degree of q survives reduction."""
    spec = as_valuation(nu)
    if gauss_norm(D, spec) < 0 or spec.val(D.lc) != 0:
        raise ValueError("D must be integral with unit leading coefficient")
    p, q = kernel_convergent(sqrt_system(D, n))
    vp, vq = gauss_norm(p, spec), gauss_norm(q, spec)
    if vp < 0 or vq < 0:
        return False
    if spec.val(q.lc) == 0 and vq != 0:
        return False
    qbar = reduce_poly(q, spec)
    if qbar.deg == q.deg and vq != 0:
        return False
    return True
