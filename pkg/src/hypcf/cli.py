"""``hypcf`` command line front end."""
from __future__ import annotations

import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

import click
from flint import fmpz

from .cf import cf_init_sqrt, convergents, detect_period, expand
from .errors import HypcfError, InternalError, PeriodNotFound
from .fields import OrdAt, PAdic, QQ, QQt, parse_field
from .heights import convergent_height_report
from .parse import parse_poly, parse_rational
from .pell import (
    NotPellian,
    TorsionBound,
    find_pell,
    pell_from_period,
    torsion_order_mod,
    two_prime_test,
)
from .poly import Poly, complete_square, format_poly, is_squarefree, reduce_poly
from .reduction import (
    DEGREE_HEADER,
    VALUATION_HEADER,
    BadAt,
    Expansion,
    GoodThrough,
    classify_reduction,
    compute_lambda,
    default_window,
    degree_table,
    reduce_D_classify,
    valuation_table,
)
from .verify import verify_examples

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_VERDICT = 0, 1, 2, 3


def _fail(exc: Exception):
    code = EXIT_INTERNAL if isinstance(exc, InternalError) else EXIT_INPUT
    click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
    sys.exit(code)


def _read_D(text: str, field_spec: Optional[str]) -> Poly:
    fld = parse_field(field_spec) if field_spec else None
    return parse_poly(text, fld)


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _text_table(header, rows) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).rjust(w) for x, w in zip(r, widths)) for r in [header] + rows]
    return "\n".join(lines) + "\n"


def _coeff_list(p: Poly) -> List[str]:
    return [p.field.fmt(c) for c in p.coeffs]


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


@click.group()
def main():
    """Continued fractions of square roots of polynomials."""


def _guard(fn):
    import functools

    @functools.wraps(fn)
    def wrapper(*a, **k):
        try:
            return fn(*a, **k)
        except HypcfError as exc:
            _fail(exc)
        except (ValueError, ArithmeticError) as exc:
            _fail(exc)
    return wrapper


_D_OPT = click.option("--D", "D_text", required=True, help="polynomial in x, e.g. 'x^6+x'")
_FIELD_OPT = click.option("--field", "field_spec", default=None, help="Q | Fp:<p> | Qt")
_FMT_OPT = click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text")
_OUT_OPT = click.option("--out", default=None, type=click.Path(dir_okay=False))


@main.command("expand")
@_D_OPT
@_FIELD_OPT
@click.option("--steps", default=5, show_default=True)
@_FMT_OPT
@_OUT_OPT
@_guard
def cmd_expand(D_text, field_spec, steps, fmt, out):
    """Partial quotients and convergents of sqrt(D)."""
    D = _read_D(D_text, field_spec)
    quot, _ = expand(cf_init_sqrt(D), steps)
    convs = convergents(quot)
    if fmt == "json":
        rows = [{"n": c.n, "a": _coeff_list(a), "p": _coeff_list(c.p), "q": _coeff_list(c.q)}
                for a, c in zip(quot, convs)]
        text = _json({"input": {"D": format_poly(D), "field": str(D.field)},
                      "params": {"steps": steps}, "rows": rows,
                      "meta": {"window": None, "exactness": "exact"}})
    elif fmt == "csv":
        text = _csv(["n", "a", "p", "q"], [[c.n, str(a), str(c.p), str(c.q)] for a, c in zip(quot, convs)])
    else:
        text = "".join(f"a_{n} = {a}\n" for n, a in enumerate(quot))
    _emit(text, out)


def _admissible(D: Poly, p: int):
    """None if p can be used for the two-prime test, else the skip reason."""
    if p == 2:
        return "p = 2"
    cls = reduce_D_classify(D, p)
    if cls.kind == "Unsupported":
        return cls.reason
    if cls.kind == "Square":
        return "D is a square mod p"
    if not is_squarefree(reduce_poly(D, PAdic(p))):
        return "D is not square-free mod p"
    return None


def _primes(lo: int, hi: int):
    return [p for p in range(max(lo, 2), hi + 1) if fmpz(p).is_prime()]


@main.command("pell")
@_D_OPT
@_FIELD_OPT
@click.option("--primes", default=None, help="two primes 'p1,p2' for the reduction test")
@click.option("--max-steps", default=None, type=int)
@_FMT_OPT
@_guard
def cmd_pell(D_text, field_spec, primes, max_steps, fmt):
    """Decide whether D is Pellian."""
    D = _read_D(D_text, field_spec)
    rep, sol = find_pell(D, max_steps if max_steps is not None else 40)
    result = {"D": format_poly(D)}
    if sol is not None:
        result.update(verdict="Pellian", p=str(sol.p), q=str(sol.q),
                      omega=D.field.fmt(sol.omega), quasi_period=rep.quasi_period,
                      period=rep.period)
        lines = [f"Pellian: quasi-period {rep.quasi_period}, period {rep.period}",
                 f"p = {sol.p}", f"q = {sol.q}", f"omega = {D.field.fmt(sol.omega)}"]
        code = EXIT_OK
    elif D.field != QQ:
        result.update(verdict="Unknown", searched=rep.max_steps)
        lines = [f"no period within {rep.max_steps} steps"]
        code = EXIT_VERDICT
    else:
        lines = [f"no period within {rep.max_steps} steps"]
        if primes:
            p1, p2 = (int(x) for x in primes.split(","))
        else:
            chosen = []
            for p in _primes(3, 1000):
                why = _admissible(D, p)
                if why:
                    lines.append(f"skip {p}: {why}")
                    continue
                chosen.append(p)
                if len(chosen) == 2:
                    break
            if len(chosen) < 2:
                raise PeriodNotFound("no admissible primes below 1000")
            p1, p2 = chosen
        res = two_prime_test(D, p1, p2)
        if isinstance(res, NotPellian):
            m1, m2 = res.orders
            lines.append(f"Not Pellian: m_{p1}={m1}, m_{p2}={m2} incompatible")
            result.update(verdict="NotPellian", primes=[p1, p2], orders=[m1, m2])
            code = EXIT_OK
        else:
            g = int(D.deg) // 2 - 1
            budget = max(res.bound - g, 1) + 1
            rep2, sol2 = find_pell(D, budget)
            if sol2 is not None:
                lines.append(f"Pellian: p = {sol2.p}, q = {sol2.q}")
                result.update(verdict="Pellian", p=str(sol2.p), q=str(sol2.q))
                code = EXIT_OK
            else:
                lines.append(f"Not Pellian: torsion order divides {res.bound}, "
                             f"no period within {budget} steps")
                result.update(verdict="NotPellian", primes=[p1, p2], orders=list(res.orders),
                              bound=res.bound)
                code = EXIT_OK
    if fmt == "json":
        click.echo(_json({"input": {"D": format_poly(D)}, "params": {"primes": primes},
                          "rows": [result], "meta": {"window": None, "exactness": "exact"}}), nl=False)
    else:
        click.echo("\n".join(lines))
    sys.exit(code)


def _valuation_for(D: Poly, prime, t0):
    if D.field == QQt:
        if t0 is None:
            raise click.UsageError("--t0 is required over Q(t)")
        return OrdAt(parse_rational(t0))
    if prime is None:
        raise click.UsageError("--prime is required over Q")
    return PAdic(prime)


@main.command("reduce")
@_D_OPT
@_FIELD_OPT
@click.option("--prime", type=int, default=None)
@click.option("--t0", default=None)
@click.option("--rows", default=20, show_default=True)
@click.option("--table", type=click.Choice(["valuations", "degrees"]), default="valuations")
@click.option("--window", type=int, default=None)
@_FMT_OPT
@_OUT_OPT
@_guard
def cmd_reduce(D_text, field_spec, prime, t0, rows, table, window, fmt, out):
    """Valuation or degree table of sqrt(D) modulo a prime (or at t = t0)."""
    D = _read_D(D_text, field_spec)
    if prime == 2:
        click.echo("Unsupported: residue characteristic 2", err=True)
        sys.exit(EXIT_INPUT)
    nu = _valuation_for(D, prime, t0)
    cls = reduce_D_classify(D, nu)
    if cls.kind != "NonSquare":
        click.echo(f"{cls}: no reduction table", err=True)
        sys.exit(EXIT_INPUT)
    ex = Expansion(D, nu)
    lam = compute_lambda(D, nu, rows - 1, ex)
    W = window or default_window(D, rows)
    if table == "valuations":
        data = valuation_table(D, nu, rows, W, ex, lam)
        header = VALUATION_HEADER
    else:
        data = degree_table(D, nu, rows, ex, lam)
        header = DEGREE_HEADER
    cells = [r.cells() for r in data]
    if fmt == "csv":
        text = _csv(header, cells)
    elif fmt == "json":
        rows_json = []
        for r, c in zip(data, cells):
            d = dict(zip(header, c))
            d["exactness"] = r.exactness() if hasattr(r, "exactness") else "exact"
            rows_json.append(d)
        text = _json({"input": {"D": format_poly(D), "valuation": str(nu)},
                      "params": {"rows": rows, "table": table}, "rows": rows_json,
                      "meta": {"window": W, "exactness": "per-row"}})
    else:
        text = _text_table(header, cells)
    _emit(text, out)


ATLAS_HEADER = ["p", "square_reduction", "square_free", "quasi_period", "torsion_order",
                "first_bad_index", "note"]


def _atlas_row(args):
    D, p, horizon = args
    try:
        cls = reduce_D_classify(D, p)
        if cls.kind == "Unsupported":
            return [p, "", "", "", "", "", cls.reason]
        if cls.kind == "Square":
            return [p, "1", "", "", "", "1", "square reduction"]
        sf = is_squarefree(reduce_poly(D, PAdic(p)))
        rep = torsion_order_mod(D, p)
        verdict = classify_reduction(D, PAdic(p), horizon)
        bad = verdict.n if isinstance(verdict, BadAt) else ""
        return [p, "0", "1" if sf else "0", rep.quasi_period, rep.torsion_order, bad, ""]
    except HypcfError as exc:
        return [p, "", "", "", "", "", f"{type(exc).__name__}: {exc}"]


def _parse_range(text: str):
    lo, _, hi = text.partition("..")
    return int(lo), int(hi or lo)


@main.command("atlas")
@_D_OPT
@click.option("--primes", "prange", default="3..50", show_default=True)
@click.option("--horizon", default=30, show_default=True, help="steps scanned for bad reduction")
@click.option("--workers", default=None, type=int)
@_OUT_OPT
@_guard
def cmd_atlas(D_text, prange, horizon, workers, out):
    """Per-prime torsion orders and reduction data, written as CSV."""
    D = _read_D(D_text, "Q")
    lo, hi = _parse_range(prange)
    todo = [p for p in _primes(lo, hi) if p != 2]
    done = {}
    if out and os.path.exists(out):
        with open(out) as fh:
            for row in list(csv.reader(fh))[1:]:
                if row:
                    done[int(row[0])] = row
    pending = [p for p in todo if p not in done]
    if pending:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for row in pool.map(_atlas_row, [(D, p, horizon) for p in pending]):
                done[int(row[0])] = row
    rows = [done[p] for p in sorted(done)]
    _emit(_csv(ATLAS_HEADER, rows), out)


@main.command("heights")
@_D_OPT
@click.option("--steps", default=10, show_default=True)
@_FMT_OPT
@_OUT_OPT
@_guard
def cmd_heights(D_text, steps, fmt, out):
    """Projective heights of convergents against their upper bounds."""
    D = _read_D(D_text, "Q")
    reps = convergent_height_report(D, steps)
    header = ["m", "h_p", "h_q", "h_a", "bound_p", "bound_q"]
    rows = [[r.m] + [f"{x:.6f}" for x in (r.h_p, r.h_q, r.h_a, r.bound_p, r.bound_q)] for r in reps]
    if fmt == "json":
        text = _json({"input": {"D": format_poly(D)}, "params": {"steps": steps},
                      "rows": [dict(zip(header, r)) for r in rows],
                      "meta": {"window": None, "exactness": "float64 logs"}})
    elif fmt == "csv":
        text = _csv(header, rows)
    else:
        text = _text_table(header, rows)
    _emit(text, out)
    if not all(r.ok for r in reps):
        click.echo("height bound violated", err=True)
        sys.exit(EXIT_VERDICT)


@main.command("verify-examples")
@click.option("--filter", "filter_text", default=None)
@click.option("--manifest", default=None, type=click.Path(exists=True, dir_okay=False))
@_guard
def cmd_verify(filter_text, manifest):
    """Recompute the bundled examples and diff against stored outputs."""
    from pathlib import Path
    from .verify import load_manifest
    entries = load_manifest(manifest) if manifest else None
    base = Path(manifest).parent if manifest else None
    results = verify_examples(filter_text, entries, base)
    failed = 0
    for r in results:
        click.echo(f"{'PASS' if r.ok else 'FAIL'} {r.name}" + (f": {r.detail}" if r.detail else ""))
        failed += not r.ok
    click.echo(f"{len(results) - failed}/{len(results)} passed")
    sys.exit(EXIT_VERDICT if failed else EXIT_OK)


if __name__ == "__main__":
    main()
