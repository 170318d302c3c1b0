import json
import random
import subprocess
import sys

import pytest

from t36mf.cli import main
from t36mf.matrixio import loads_matrix
from t36mf.pencil import GF, block, conjugate, direct_sum, dump_pencil, random_invertible
from t36mf.factor import load_fixture
from t36mf.poly import PolyMatrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_words_listing(capsys):
    code, out, _ = run(capsys, "words", "--max-n", "1")
    assert code == 0 and len(out.splitlines()) == 24
    assert out.splitlines()[0].split()[0] == "a:1"


def test_words_bad_max_n(capsys):
    code, _, err = run(capsys, "words", "--max-n", "0")
    assert code == 2 and "error" in err


def test_words_json(capsys):
    code, out, _ = run(capsys, "words", "--max-n", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data) == 48 and data[0]["word"] == "a:1"


def test_build_text_and_truncation(capsys):
    code, out, _ = run(capsys, "mf", "build", "--word", "a:2")
    assert code == 0 and "6x6" in out and "x*z'" in out
    code, out, _ = run(capsys, "mf", "build", "--word", "a:2:lr")
    assert code == 0 and "4x4" in out


def test_build_json_matches_fixture(capsys):
    code, out, _ = run(capsys, "mf", "build", "--word", "d:2", "--format", "json")
    m, lam, meta = loads_matrix(out)
    assert code == 0 and lam == "symbolic" and meta["word"] == "d:2"
    assert m == load_fixture("d:2")[0]


def test_build_latex(capsys):
    code, out, _ = run(capsys, "mf", "build", "--word", "cp:1", "--format", "latex")
    assert code == 0 and r"\begin{array}" in out


def test_build_with_complement(capsys):
    code, out, _ = run(capsys, "mf", "build", "--word", "a:1", "--with-complement", "--format", "json")
    m, _, meta = loads_matrix(out)
    assert code == 0 and len(meta["complement"]) == m.rows


def test_bad_word_and_lambda(capsys):
    assert run(capsys, "mf", "build", "--word", "q:1")[0] == 2
    assert run(capsys, "mf", "build", "--word", "a:1", "--lambda", "1")[0] == 2


def test_lambda_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("T36_LAMBDA", "3")
    code, out, _ = run(capsys, "mf", "build", "--word", "a:1", "--format", "json")
    assert loads_matrix(out)[1] == "3"


def test_verify_word(capsys):
    code, out, _ = run(capsys, "mf", "verify", "--word", "d:2")
    assert code == 0 and out.startswith("PASS")


def test_build_then_verify_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "mf", "build", "--word", "b:2:r", "--format", "json")
    path = tmp_path / "q.json"
    path.write_text(out)
    code, out, _ = run(capsys, "mf", "verify", "--matrix", str(path), "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["minimal"] and rep["word"] == "b:2:r"


def test_verify_identity_fails(capsys, tmp_path):
    path = tmp_path / "identity.json"
    path.write_text(json.dumps({"rows": 2, "cols": 2, "entries": [["1", "0"], ["0", "1"]]}))
    code, out, _ = run(capsys, "mf", "verify", "--matrix", str(path))
    assert code == 1 and out.startswith("FAIL")


def test_verify_usage_errors(capsys, tmp_path):
    assert run(capsys, "mf", "verify")[0] == 2
    assert run(capsys, "mf", "verify", "--word", "a:1", "--all")[0] == 2
    assert run(capsys, "mf", "verify", "--matrix", str(tmp_path / "missing.json"))[0] == 2


def test_verify_all_reports_every_word(capsys):
    code, out, _ = run(capsys, "mf", "verify", "--all", "--max-n", "1", "--format", "json")
    reports = json.loads(out)
    assert len(reports) == 24 and all(r["ok"] for r in reports)
    # the decorated families keep a unit in psi, so the batch exits 1
    failing = {r["word"].split(":")[0] for r in reports if not r["minimal"]}
    assert failing == {"cp", "dp"} and code == 1


def write_pencil(tmp_path, p, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(dump_pencil(p)))
    return str(path)


def test_pencil_canonical(capsys, tmp_path):
    code, out, _ = run(capsys, "pencil", "decompose", write_pencil(tmp_path, block("A", 3)))
    assert code == 0 and out.splitlines() == ["A(3)", "words: a:3"]


def test_pencil_conjugated(capsys, tmp_path):
    K, rng = GF(101), random.Random(3)
    p = direct_sum([block("C", 1, k=K), block("D", 2, k=K)], K)
    p = conjugate(p, random_invertible(K, p.rows, rng), random_invertible(K, p.cols, rng))
    code, out, _ = run(capsys, "pencil", "decompose", write_pencil(tmp_path, p))
    assert code == 0 and out.splitlines()[0] == "C(1), D(2)"


def test_pencil_eigenvalue_outside_field(capsys, tmp_path):
    path = tmp_path / "rot.json"
    path.write_text(json.dumps({"field": "Fp:7", "X1": [[1, 0], [0, 1]], "X2": [[0, 6], [1, 0]]}))
    code, _, err = run(capsys, "pencil", "decompose", str(path))
    assert code == 1 and "error" in err


def test_pencil_bad_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert run(capsys, "pencil", "decompose", str(path))[0] == 2


def test_canon_and_present(capsys):
    code, out, _ = run(capsys, "mf", "canon", "--word", "a:2")
    assert code == 0 and "R12' u2" in out
    code, out, _ = run(capsys, "mf", "present", "--word", "a:2", "--format", "json")
    m, _, meta = loads_matrix(out)
    assert code == 0 and m.rows == 6 and len(meta["row_tags"]) == 6


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "--word", "a:2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["invariants"]["a:2"][0] == [2, "inf", "inf", "inf", "inf", "inf"]
    code, out, _ = run(capsys, "invariants", "--all", "--max-n", "1")
    assert code == 0 and "collision group" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "t36mf", "words", "--max-n", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and len(res.stdout.splitlines()) == 24
