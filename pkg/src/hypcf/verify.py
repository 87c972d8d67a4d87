"""Bundled example corpus and the checker behind ``hypcf verify-examples``."""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from importlib import resources
from typing import List, Optional

from .cf import cf_init_sqrt, convergents, detect_period, expand
from .fields import OrdAt, parse_field
from .parse import parse_poly, parse_rational
from .pell import pell_from_period, torsion_order_mod, two_prime_test, NotPellian
from .reduction import Expansion, classify_reduction, compute_lambda, degree_table, valuation_table


@dataclass
class FixtureResult:
    name: str
    ok: bool
    detail: str = ""


def _fixture_dir():
    return resources.files("hypcf") / "fixtures"


def load_manifest(path=None) -> List[dict]:
    if path is None:
        text = (_fixture_dir() / "manifest.json").read_text()
    else:
        text = open(path).read()
    return json.loads(text)["fixtures"]


def read_table(name: str, base=None) -> List[List[str]]:
    p = (_fixture_dir() / name) if base is None else base / name
    with p.open() if hasattr(p, "open") else open(p) as fh:
        return list(csv.reader(fh))


def _D(entry):
    fld = parse_field(entry.get("field", "Q"))
    return parse_poly(entry["D"], fld)


def _compare_rows(expected: List[List[str]], got: List[List[str]]) -> Optional[str]:
    for i, (e, g) in enumerate(zip(expected, got)):
        for j, (x, y) in enumerate(zip(e, g)):
            if x != y:
                if i == 0:
                    return f"header column {j}: expected {x!r}, got {y!r}"
                return f"row n={i - 1} column {expected[0][j]}: expected {x!r}, got {y!r}"
    if len(expected) != len(got):
        return f"row count: expected {len(expected)}, got {len(got)}"
    return None


def run_fixture(entry: dict, base=None) -> FixtureResult:
    name = entry["name"]
    kind = entry["kind"]
    D = _D(entry)
    if kind in ("valuations", "degrees"):
        table = read_table(entry["file"], base)
        header, body = table[0], table[1:]
        nu = entry["prime"]
        ex = Expansion(D, nu)
        lam = compute_lambda(D, ex.nu, len(body) - 1, ex)
        if kind == "valuations":
            rows = valuation_table(D, nu, len(body), expansion=ex, lam=lam)
        else:
            rows = degree_table(D, nu, len(body), expansion=ex, lam=lam)
        got = [header] + [r.cells() for r in rows]
        diff = _compare_rows(table, got)
        return FixtureResult(name, diff is None, diff or "")
    if kind == "quotients":
        want = [parse_poly(s, D.field) for s in entry["expected"]]
        got, _ = expand(cf_init_sqrt(D), len(want))
        for i, (w, g) in enumerate(zip(want, got)):
            if w != g:
                return FixtureResult(name, False, f"a_{i}: expected {w}, got {g}")
        return FixtureResult(name, True)
    if kind == "period":
        rep = detect_period(cf_init_sqrt(D))
        exp = entry["expected"]
        got = {"quasi_period": rep.quasi_period, "period": rep.period}
        if rep.found:
            sol = pell_from_period(D, rep)
            got["deg_p"] = int(sol.p.deg)
            got["deg_q"] = int(sol.q.deg)
        for k, v in exp.items():
            if got.get(k) != v:
                return FixtureResult(name, False, f"{k}: expected {v}, got {got.get(k)}")
        return FixtureResult(name, True)
    if kind == "torsion":
        for p, m in entry["expected"].items():
            r = torsion_order_mod(D, int(p))
            if r.torsion_order != m:
                return FixtureResult(name, False, f"m mod {p}: expected {m}, got {r.torsion_order}")
        return FixtureResult(name, True)
    if kind == "not_pellian":
        p1, p2 = entry["primes"]
        res = two_prime_test(D, p1, p2)
        if not isinstance(res, NotPellian):
            return FixtureResult(name, False, f"expected NotPellian, got {res}")
        return FixtureResult(name, True)
    if kind == "classify":
        t0 = parse_rational(str(entry["t0"]))
        res = classify_reduction(D, OrdAt(t0), entry["steps"])
        want = entry["expected"]
        got = type(res).__name__ + (f"({res.n})" if hasattr(res, "n") else "")
        if got != want:
            return FixtureResult(name, False, f"expected {want}, got {got}")
        return FixtureResult(name, True)
    return FixtureResult(name, False, f"unknown fixture kind {kind!r}")


def verify_examples(filter_text: Optional[str] = None, manifest=None, base=None,
                    include_slow: bool = True) -> List[FixtureResult]:
    entries = manifest if manifest is not None else load_manifest()
    out = []
    for e in entries:
        if filter_text and filter_text not in e["name"]:
            continue
        if e.get("slow") and not include_slow and not filter_text:
            continue
        out.append(run_fixture(e, base))
    return out
