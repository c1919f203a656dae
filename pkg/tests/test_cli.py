import json

import pytest

from sqfdepth.cli import EXIT_CAP, EXIT_DEGENERATE, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_path(capsys):
    assert run(capsys, "gen", "--family", "path", "--n", "4", "--k", "1")[:2] == (EXIT_OK, "[[1,2],[2,3],[3,4]]\n")


def test_gen_cycle_count(capsys):
    code, out, _ = run(capsys, "gen", "--family", "cycle", "--n", "5", "--k", "2")
    assert code == EXIT_OK and len(json.loads(out)) == 10


def test_gen_graph(capsys):
    code, out, _ = run(capsys, "gen", "--family", "cycle", "--n", "4", "--k", "1", "--graph")
    assert json.loads(out) == {"family": "cycle", "n": 4, "k": 1, "edges": [[1, 2], [1, 4], [2, 3], [3, 4]]}


def test_gen_bad_spec(capsys):
    code, _, err = run(capsys, "gen", "--family", "path", "--n", "1", "--k", "1")
    assert code == EXIT_INPUT and "n >= 2" in err


def test_invariant_values(capsys):
    assert run(capsys, "invariant", "sdepth-quotient", "--family", "path", "--n", "5", "--k", "2")[1] == "1\n"
    assert run(capsys, "invariant", "mmis", "--family", "path", "--n", "7", "--k", "1")[1] == "3\n"
    out = run(capsys, "invariant", "sdepth-pair", "--family", "cycle-vs-path", "--n", "6", "--k", "1")[1]
    assert int(out) >= 3


def test_invariant_certificate_round_trip(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    code, out, _ = run(capsys, "invariant", "sdepth-ideal", "--family", "cycle", "--n", "7", "--k", "1", "--certificate", str(cert))
    assert code == EXIT_OK
    doc = json.loads(cert.read_text())
    assert doc["value"] == int(out)
    assert run(capsys, "validate-certificate", str(cert))[:2] == (EXIT_OK, "valid\n")
    doc["value"] += 1
    cert.write_text(json.dumps(doc))
    assert run(capsys, "validate-certificate", str(cert))[:2] == (EXIT_FAIL, "invalid\n")


def test_validate_unreadable(capsys, tmp_path):
    bad = tmp_path / "x.json"
    bad.write_text("[]")
    assert run(capsys, "validate-certificate", str(bad))[0] == EXIT_INPUT


def test_exit_codes(capsys):
    assert run(capsys, "invariant", "sdepth-ideal", "--family", "path", "--n", "9", "--k", "2", "--cap-poset", "50")[0] == EXIT_CAP
    assert run(capsys, "invariant", "sdepth-pair", "--family", "cycle-vs-path", "--n", "3", "--k", "2")[0] == EXIT_DEGENERATE
    assert run(capsys, "invariant", "depth-quotient", "--family", "path", "--n", "5", "--k", "1", "--field", "p:6")[0] == EXIT_INPUT
    assert run(capsys, "invariant", "sdepth-pair", "--family", "path", "--n", "5", "--k", "1")[0] == EXIT_INPUT
    assert run(capsys, "verify", "--claims", "no-such-claim")[0] == EXIT_INPUT


def test_field_choice(capsys):
    for field in ("q", "p:2", "p:32003"):
        assert run(capsys, "invariant", "depth-quotient", "--family", "cycle", "--n", "8", "--k", "2", "--field", field)[1] == "2\n"


def test_verify_writes_report(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _, err = run(capsys, "verify", "--n-max", "8", "--k-max", "3", "--out", str(out))
    assert code == EXIT_OK and "fail 0" in err
    doc = json.loads(out.read_text())
    assert doc["summary"]["fail"] == 0 and doc["summary"]["pass"] > 300


def test_verify_path_depth_and_herzog(capsys):
    code, out, _ = run(capsys, "verify", "--claims", "path-depth", "--n-max", "12", "--format", "csv")
    rows = out.splitlines()[1:]
    assert code == EXIT_OK and rows and all(r.startswith("path-depth,") and r.endswith(",pass") for r in rows)
    code, out, _ = run(capsys, "verify", "--claims", "herzog", "--n-max", "9", "--format", "table")
    assert code == EXIT_OK and "herzog-cycle" in out and "herzog-path" in out


def test_verify_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "--n-max", "7", "--k-max", "2", "--out", str(a))
    run(capsys, "verify", "--n-max", "7", "--k-max", "2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_cache_does_not_change_reports(capsys, tmp_path):
    cache = tmp_path / "cache.json"
    plain, cold, warm = tmp_path / "p.csv", tmp_path / "c.csv", tmp_path / "w.csv"
    base = ["verify", "--n-max", "7", "--k-max", "2", "--format", "csv"]
    run(capsys, *base, "--out", str(plain))
    run(capsys, *base, "--out", str(cold), "--cache", str(cache))
    assert cache.exists()
    run(capsys, *base, "--out", str(warm), "--cache", str(cache))
    assert plain.read_text() == cold.read_text() == warm.read_text()


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SQFDEPTH_CACHE_DIR", str(tmp_path))
    run(capsys, "invariant", "mmis", "--family", "cycle", "--n", "9", "--k", "1")
    assert (tmp_path / "results.json").exists()


def test_list_claims(capsys):
    code, out, _ = run(capsys, "verify", "--list-claims")
    assert code == EXIT_OK and "pair-sdepth" in out.split()
