import csv
import io
import json

from click.testing import CliRunner

from hypcf.cli import main
from hypcf.verify import read_table

QUARTIC = "x^4+5*x^2-3*x+19"


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_expand_text_and_json():
    r = run("expand", "--D", QUARTIC, "--steps", "2")
    assert r.exit_code == 0
    assert r.output.splitlines() == ["a_0 = x^2+5/2", "a_1 = -2/3*x-17/6"]
    r = run("expand", "--D", "x^6+x", "--steps", "2", "--format", "json")
    doc = json.loads(r.output)
    assert set(doc) == {"input", "params", "rows", "meta"}
    assert doc["rows"][1]["q"] == ["0", "0", "2"]


def test_expand_over_finite_field():
    r = run("expand", "--D", QUARTIC, "--field", "Fp:19", "--steps", "1")
    assert r.exit_code == 0 and "a_0" in r.output


def test_input_errors_exit_2():
    assert run("expand", "--D", "x^2+").exit_code == 2
    assert run("expand", "--D", "x^2+2*x+1").exit_code == 2
    assert run("reduce", "--D", QUARTIC, "--prime", "2").exit_code == 2


def test_pell_verdicts():
    r = run("pell", "--D", "x^6+x")
    assert r.exit_code == 0 and "p = 2*x^5+1" in r.output
    r = run("pell", "--D", QUARTIC, "--primes", "5,7", "--max-steps", "10")
    assert r.exit_code == 0 and "Not Pellian" in r.output
    r = run("pell", "--D", QUARTIC, "--max-steps", "10")
    assert "skip 7" in r.output and "Not Pellian" in r.output


def test_pell_over_finite_field():
    r = run("pell", "--D", QUARTIC, "--field", "Fp:19", "--format", "json")
    doc = json.loads(r.output)
    assert doc["rows"][0]["quasi_period"] == 6


def test_reduce_csv_matches_fixture():
    r = run("reduce", "--D", QUARTIC, "--prime", "5", "--rows", "35", "--format", "csv")
    assert r.exit_code == 0
    assert list(csv.reader(io.StringIO(r.output))) == read_table("quartic_nu5_valuations.csv")


def test_reduce_degrees_and_t0():
    r = run("reduce", "--D", "x^6+7*x^4+8*x^3+9*x^2+5", "--prime", "3", "--rows", "29",
            "--table", "degrees", "--format", "csv")
    assert list(csv.reader(io.StringIO(r.output))) == read_table("sextic_mod3_degrees.csv")
    r = run("reduce", "--D", "x^6+x+t", "--t0", "3", "--rows", "4", "--format", "json")
    assert r.exit_code == 0 and len(json.loads(r.output)["rows"]) == 4


def test_atlas_resume(tmp_path):
    out = tmp_path / "atlas.csv"
    r = run("atlas", "--D", QUARTIC, "--primes", "3..13", "--out", str(out), "--workers", "1")
    assert r.exit_code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0][0] == "p" and [row[0] for row in rows[1:]] == ["3", "5", "7", "11", "13"]
    assert rows[2][4] == "8" and rows[2][5] == "7"
    r = run("atlas", "--D", QUARTIC, "--primes", "3..19", "--out", str(out), "--workers", "1")
    rows2 = list(csv.reader(out.open()))
    assert rows2[:len(rows)] == rows and rows2[-1][0] == "19"


def test_heights_csv():
    r = run("heights", "--D", QUARTIC, "--steps", "4", "--format", "csv")
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == "m,h_p,h_q,h_a,bound_p,bound_q"


def test_verify_examples_filter():
    r = run("verify-examples", "--filter", "x6x")
    assert r.exit_code == 0 and "PASS x6x-period" in r.output
