import json

from hypcf.verify import load_manifest, run_fixture, verify_examples


def test_bundled_corpus_passes():
    results = verify_examples(include_slow=False)
    assert len(results) >= 20
    failed = [(r.name, r.detail) for r in results if not r.ok]
    assert not failed


def test_divergence_is_reported_with_location(tmp_path):
    entry = next(e for e in load_manifest() if e["name"] == "quartic-nu5-valuations")
    from hypcf.verify import read_table
    rows = read_table(entry["file"])
    rows[8][2] = "0"
    (tmp_path / "t.csv").write_text("\n".join(",".join(r) for r in rows) + "\n")
    res = run_fixture(dict(entry, file="t.csv"), tmp_path)
    assert not res.ok and "row n=7" in res.detail and "nu_alpha" in res.detail


def test_wrong_expectation_fails():
    entry = {"name": "bad", "kind": "period", "D": "x^6+x", "expected": {"period": 3}}
    assert not run_fixture(entry).ok
