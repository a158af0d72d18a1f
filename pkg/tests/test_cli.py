import json
import subprocess
import sys

import pytest

from m0n.cli import main
from m0n.classes import DivisorClass
from m0n.hypertree import COMPLETE_QUADRILATERAL


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.fixture
def quad_file(tmp_path):
    path = tmp_path / "quad.json"
    path.write_text(json.dumps(COMPLETE_QUADRILATERAL.to_json()))
    return str(path)


def test_ht_class(quad_file, capsys):
    code, out = run(["ht", "class", quad_file, "--basis", "1"], capsys)
    assert code == 0
    c = DivisorClass.from_json(json.loads(out))
    assert (c.n, c.basis_index, c.h) == (6, 1, 2)


def test_ht_zero_based(tmp_path, capsys):
    path = tmp_path / "quad0.json"
    path.write_text(json.dumps({"n": 6, "blocks": [[0, 1, 2], [3, 1, 4], [0, 4, 5], [3, 2, 5]]}))
    code, out = run(["ht", "validate", str(path), "--zero-based"], capsys)
    assert code == 0 and json.loads(out)["valid"] is True


def test_ht_poly_and_aut(quad_file, capsys):
    code, out = run(["ht", "poly", quad_file], capsys)
    assert code == 0 and json.loads(out)["degree"] == 3
    code, out = run(["--text", "ht", "aut", quad_file], capsys)
    assert code == 0 and out.strip() == "24"


def test_ht_enum(capsys):
    code, out = run(["ht", "enum", "--n", "8"], capsys)
    assert code == 0 and json.loads(out)["count"] == 3
    code, out = run(["ht", "enum", "--n", "9"], capsys)
    assert code == 1 and json.loads(out)["error"] == "UnsupportedN"


def test_ht_bipyramid(capsys):
    code, out = run(["ht", "bipyramid", "--k", "2"], capsys)
    assert json.loads(out)["n"] == 6
    code, out = run(["ht", "bipyramid", "--k", "1"], capsys)
    assert code == 1


def test_cc_class_with_oracle(capsys):
    code, out = run(["cc", "class", "--weights", "1,1,-1,-1", "--oracle"], capsys)
    data = json.loads(out)
    assert code == 0 and data["oracle_agrees"] is True and data["h"] == 2
    code, out = run(["cc", "class", "--weights", "1,1,-1,-1", "--pullback", "--oracle"], capsys)
    data = json.loads(out)
    assert data["h"] == 3 and data["oracle_agrees"] is True


def test_cc_poly_and_restrict(capsys):
    code, out = run(["cc", "poly", "--weights", "1,-1"], capsys)
    assert json.loads(out)["polynomial"] == "x1 - x2"
    code, out = run(["cc", "restrict", "--weights", "1,1,-1,-1"], capsys)
    assert code == 0 and json.loads(out)["agrees"] is True
    code, out = run(["cc", "restrict", "--weights", "2,-1,-1"], capsys)
    assert code == 1 and json.loads(out)["error"] == "GcdViolation"


def test_bad_weights_are_domain_errors(capsys):
    code, out = run(["cc", "poly", "--weights", "1,1"], capsys)
    assert code == 1 and json.loads(out)["error"] == "InvalidWeights"


def test_dk(capsys):
    code, out = run(["dk", "--k", "2", "--pair", "--counterexample"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["pairing"]["pairing"] == -1
    assert data["counterexample"]["is_counterexample"] is True
    code, out = run(["dk", "--k", "2", "--pair", "--text"], capsys)
    assert "9 - 4 - 6 = -1" in out


def test_db_build(tmp_path, capsys):
    out_file = tmp_path / "db.json"
    code, out = run(["db", "build", "--n-min", "6", "--n-max", "7", "--out", str(out_file)], capsys)
    assert code == 0 and json.loads(out) == {"out": str(out_file), "records": 2, "truncated": False}
    records = json.loads(out_file.read_text())
    assert [r["n"] for r in records] == [6, 7]
    code, out = run(["db", "build", "--n-min", "9", "--n-max", "9", "--out", str(out_file)], capsys)
    assert code == 1


def test_verify(capsys):
    code, out = run(["verify", "bipyramid", "--k", "2"], capsys)
    assert code == 0 and json.loads(out)["classes_equal"] is True


def test_poly_commands(capsys):
    code, out = run(["poly", "mult", "--poly", "(x1-x2)^2*(x3-x4)", "--n", "4", "--J", "1,2"], capsys)
    assert json.loads(out)["multiplicity"] == 2
    code, out = run(
        ["poly", "mult", "--poly", "(x1-x2)^2*(x3-x4)", "--n", "4", "--J", "0,1", "--zero-based", "--fast", "--seed", "3"],
        capsys,
    )
    assert json.loads(out)["multiplicity"] == 2
    code, out = run(["poly", "class", "--poly", "x1 - x2", "--n", "5", "--basis", "3"], capsys)
    assert code == 0 and json.loads(out)["h"] == 1
    code, out = run(["poly", "class", "--poly", "x1 + x2", "--n", "5"], capsys)
    assert code == 1 and json.loads(out)["error"] == "NotTranslationInvariant"
    code, out = run(["poly", "mult", "--poly", "x1 +", "--n", "4", "--J", "1,2"], capsys)
    assert code == 1 and json.loads(out)["error"] == "ParseError"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["ht", "enum"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "all", "--fast"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == 2


def test_missing_file(capsys):
    code, out = run(["ht", "validate", "/nonexistent.json"], capsys)
    assert code == 1 and json.loads(out)["error"] == "ParseError"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "m0n", "dk", "--k", "1", "--counterexample"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["counterexample"]["is_counterexample"] is False
