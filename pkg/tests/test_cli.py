import json
import subprocess
import sys

import pytest

from freearr import catalog
from freearr.arrangement import Arrangement
from freearr.cli import jsonable, run


def call(capsys, *argv):
    status = run(list(argv))
    out = capsys.readouterr().out
    return status, json.loads(out)


def test_freeness_examples(capsys):
    status, out = call(capsys, "freeness", "--builtin", "example-435", "--field", "q", "--json")
    assert status == 0 and out["free"] is True and out["exponents"] == [1, 3, 3]
    status, out = call(capsys, "freeness", "--builtin", "example-435", "--field", "fp", "--prime", "2", "--json")
    assert status == 0 and out["free"] is True and out["exponents"] == [1, 2, 4]


def test_reduce_non_good_prime(capsys):
    status, out = call(capsys, "reduce", "--builtin", "pm2-lines", "--prime", "2", "--json")
    assert status == 1 and out == {"error": "prime 2 not good"}


@pytest.mark.parametrize("argv", [
    ["freeness", "--builtin", "no-such-thing"],
    ["freeness"],
    ["freeness", "--builtin", "example-435", "--field", "fp"],
    ["freeness", "--builtin", "example-435", "--field", "fp", "--prime", "9"],
    ["reduce", "--builtin", "example-435"],
    ["freeness", "--builtin", "sextic-f3", "--field", "q"],
    ["primes", "--builtin", "ziegler-f3"],
])
def test_input_errors(capsys, argv):
    status, out = call(capsys, *argv)
    assert status == 2 and "error" in out


def test_malformed_input_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    status, out = call(capsys, "freeness", "--input", str(bad))
    assert status == 2
    bad.write_text(json.dumps({"dim": 2, "hyperplanes": [[1, 0], [2, 0]]}))
    status, out = call(capsys, "freeness", "--input", str(bad))
    assert status == 2


def test_gen_is_byte_identical(capsys):
    for name in ["boolean-3", "example-435", "sextic-f3", "nonfree-s6", "shicatalan-b2-cone",
                 "shicatalan-b3-cone", "ziegler-f3", "pm2-lines"]:
        run(["gen", name, "--json"])
        first = capsys.readouterr().out
        run(["gen", "--builtin", name, "--json"])
        assert capsys.readouterr().out == first


def test_gen_sizes(capsys):
    assert len(call(capsys, "gen", "boolean-3")[1]["hyperplanes"]) == 3
    out = call(capsys, "gen", "shicatalan-b2-cone")[1]
    assert out["dim"] == 3 and len(out["hyperplanes"]) == 21
    out = call(capsys, "gen", "shicatalan-b3-cone")[1]
    assert out["dim"] == 4 and len(out["hyperplanes"]) == 46
    out = call(capsys, "gen", "ziegler-f3")[1]
    assert out["prime"] == 3 and len(out["hyperplanes"]) == 9
    assert all(sum(v) % 3 for v in out["hyperplanes"])


def test_gen_roundtrip(tmp_path, capsys):
    path = tmp_path / "a.json"
    assert run(["gen", "example-435", "--output", str(path)]) == 0
    A = Arrangement.from_json(json.loads(path.read_text()))
    assert A == catalog.builtin("example-435")
    status, out = call(capsys, "freeness", "--input", str(path), "--json")
    assert status == 0 and out["exponents"] == [1, 3, 3]


def test_analyze_composes_verbs(capsys):
    _, whole = call(capsys, "analyze", "--builtin", "nonfree-s6")
    _, free = call(capsys, "freeness", "--builtin", "nonfree-s6")
    _, chi = call(capsys, "charpoly", "--builtin", "nonfree-s6")
    _, primes = call(capsys, "primes", "--builtin", "nonfree-s6")
    assert whole["freeness"] == free and whole["charpoly"] == chi and whole["primes"] == primes


def test_charpoly_over_prime(capsys):
    status, out = call(capsys, "charpoly", "--builtin", "ziegler-f3")
    assert status == 0
    assert out["charpoly"]["coefficients"] == [1, -9, 24, -16]
    assert out["complement_points"] == 2 == out["charpoly"]["evaluations"]["3"]


def test_primes_report(capsys):
    status, out = call(capsys, "primes", "--builtin", "nonfree-s6", "--max-prime", "7", "--order", "lex")
    assert status == 0 and out["order"] == "lex"
    by_p = {r["prime"]: r for r in out["primes"]}
    assert by_p[2]["zero_divisor"] and by_p[3]["zero_divisor"]


def test_saito_verb(tmp_path, capsys):
    status, out = call(capsys, "saito", "--builtin", "example-435")
    assert status == 0 and out["is_basis"] and int(out["c"]) % 2 == 0
    # derivations from a file: Euler plus two that fail
    path = tmp_path / "d.json"
    path.write_text(json.dumps([["x", "y", "z"], ["1", "0", "0"], ["0", "1", "0"]]))
    status, out = call(capsys, "saito", "--builtin", "example-435", "--derivations", str(path))
    assert status == 1 and "hyperplane" in out["error"]
    status, out = call(capsys, "saito", "--builtin", "nonfree-s6")
    assert status == 1


def test_resolve_verb(capsys):
    status, out = call(capsys, "resolve", "--builtin", "nonfree-s6", "--field", "fp", "--prime", "3")
    assert status == 0 and out["hdim"] <= 2
    status, out = call(capsys, "resolve", "--builtin", "nonfree-s6")
    assert out["hdim"] == 3


def test_large_integers_become_strings():
    assert jsonable({"a": 2 ** 60, "b": [3, -(2 ** 54)]}) == {"a": str(2 ** 60), "b": [3, str(-(2 ** 54))]}
    assert jsonable(2 ** 53) == 2 ** 53


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "freearr", "gen", "boolean-2", "--json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["hyperplanes"] == [[1, 0], [0, 1]]
