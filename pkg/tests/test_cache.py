import json

import pytest

from sqfdepth import cache as cache_mod
from sqfdepth.cache import Calculator, ResultCache, default_cache_path
from sqfdepth.invariants import check_certificate, compute_invariant, parse_field
from sqfdepth.errors import InvalidInputError


@pytest.mark.parametrize(
    "invariant,family,n,k",
    [
        ("depth-quotient", "cycle", 8, 2),
        ("depth-ideal", "path", 6, 1),
        ("sdepth-quotient", "path", 7, 1),
        ("sdepth-ideal", "cycle", 6, 2),
        ("sdepth-pair", "cycle-vs-path", 7, 1),
        ("mmis", "path", 9, 2),
    ],
)
def test_certificates_check_out(invariant, family, n, k):
    r = compute_invariant(invariant, family, n, k)
    assert check_certificate(invariant, family, n, k, r.value, r.certificate)
    assert not check_certificate(invariant, family, n, k, r.value + 1, r.certificate)


def test_bad_certificates_are_rejected():
    assert not check_certificate("mmis", "path", 7, 1, 3, [1, 2, 5])
    assert not check_certificate("depth-quotient", "path", 7, 1, 3, {"pd": 4, "sigma": [1, 2]})
    assert not check_certificate("sdepth-quotient", "path", 4, 1, 2, [{"A": [], "B": [1, 3]}])
    assert not check_certificate("sdepth-quotient", "path", 4, 1, 2, "garbage")


def test_field_parsing():
    assert parse_field("q") == 0 and parse_field("p:32003") == 32003
    for bad in ("p:4", "r", "p:x"):
        with pytest.raises(InvalidInputError):
            parse_field(bad)


def test_round_trip_and_hits(tmp_path):
    path = tmp_path / "c.json"
    c1 = ResultCache(path)
    v = Calculator(cache=c1).value("sdepth-ideal", "path", 7, 2)
    c1.save()
    c2 = ResultCache(path)
    assert Calculator(cache=c2).value("sdepth-ideal", "path", 7, 2) == v
    assert c2.hits == 1 and c2.rejected == 0


def test_tampered_value_is_recomputed(tmp_path):
    path = tmp_path / "c.json"
    c1 = ResultCache(path)
    true_value = Calculator(cache=c1).value("sdepth-quotient", "path", 7, 1)
    c1.save()
    data = json.loads(path.read_text())
    (key,) = data
    data[key]["value"] = true_value + 1
    path.write_text(json.dumps(data))
    c2 = ResultCache(path)
    assert Calculator(cache=c2).value("sdepth-quotient", "path", 7, 1) == true_value
    assert c2.rejected == 1


def test_forged_entry_with_matching_digest_is_rejected(tmp_path):
    # a consistent digest is not enough: the certificate itself must re-validate
    path = tmp_path / "c.json"
    c = ResultCache(path)
    key = cache_mod._key("path", 7, 1, "mmis", 0)
    cert = [1, 2, 5]
    c.entries[key] = {"value": 3, "certificate": cert, "digest": cache_mod._digest(key, 3, cert)}
    assert Calculator(cache=c).value("mmis", "path", 7, 1) == 3
    assert c.rejected == 1


def test_corrupt_file_is_ignored(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("{not json")
    assert ResultCache(path).entries == {}


def test_field_only_keys_depth(tmp_path):
    c = ResultCache(tmp_path / "c.json")
    calc = Calculator(characteristic=2, cache=c)
    calc.value("depth-quotient", "cycle", 6, 1)
    calc.value("sdepth-quotient", "cycle", 6, 1)
    assert sorted(c.entries) == ["cycle|6|1|depth-quotient|p:2", "cycle|6|1|sdepth-quotient|any"]


def test_env_default(monkeypatch, tmp_path):
    monkeypatch.setenv("SQFDEPTH_CACHE_DIR", str(tmp_path))
    assert default_cache_path() == tmp_path / "results.json"
    monkeypatch.delenv("SQFDEPTH_CACHE_DIR")
    assert default_cache_path() is None
