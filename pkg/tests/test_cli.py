import json
import subprocess
import sys

import pytest

from mgtpr.cli import bundled_lexicon_text, main

from reference import GOLDEN_STEPS


@pytest.fixture()
def lexfile(tmp_path):
    p = tmp_path / "adams.lex"
    p.write_text(bundled_lexicon_text())
    return p


def test_derive_text(lexfile, tmp_path, capsys):
    assert main(["derive", str(lexfile), "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("status: success")
    assert GOLDEN_STEPS[-1] in out
    assert (tmp_path / "trace.txt").read_text() == out


def test_derive_json(tmp_path, capsys):
    assert main(["derive", "--trace-format", "json", "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "trace.json").read_text())
    assert [s["op"] for s in doc["steps"]] == ["merge", "merge", "move", "merge", "merge", "move", "move", "merge"]


def test_stuck_exit_code(tmp_path):
    p = tmp_path / "stuck.lex"
    p.write_text("=t c ::\nd ::\nt ::\nt ::\n")
    assert main(["derive", str(p), "--out", str(tmp_path)]) == 1
    assert main(["harmony", str(p), "--out", str(tmp_path)]) == 1


def test_error_exit_codes(tmp_path, capsys):
    assert main(["derive", str(tmp_path / "missing.lex")]) == 2
    assert main(["nonsense"]) == 2
    bad = tmp_path / "bad.lex"
    bad.write_text("v =d :: x\n")
    assert main(["derive", str(bad), "--out", str(tmp_path)]) == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("scheme", ["arithmetic", "fractal", "faithful"])
def test_harmony_hmg_pca(scheme, tmp_path, capsys):
    out = str(tmp_path)
    assert main(["harmony", "--scheme", scheme, "--out", out]) == 0
    assert (tmp_path / f"harmony_{scheme}.csv").exists()
    assert main(["hmg", "--scheme", scheme, "--out", out]) == 0
    assert (tmp_path / f"hmg_{scheme}.lex").read_text().startswith("=t@")
    assert main(["pca", "--scheme", scheme, "--out", out]) == 0
    assert len((tmp_path / f"pca_{scheme}.csv").read_text().splitlines()) == 10


def test_represent(tmp_path, capsys):
    assert main(["represent", "--scheme", "fractal", "--out", str(tmp_path)]) == 0
    assert "dimension 6561" in capsys.readouterr().out
    assert len(list(tmp_path.glob("state_*_fractal.csv"))) == 9
    assert main(["represent", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "state_1_faithful.txt").exists()


def test_verify(capsys):
    assert main(["verify"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(ln.startswith("PASS") for ln in lines)


def test_outputs_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        main(["harmony", "--scheme", "arithmetic", "--out", str(d)])
    assert (a / "harmony_arithmetic.csv").read_bytes() == (b / "harmony_arithmetic.csv").read_bytes()


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "mgtpr", "derive", "--out", str(tmp_path)], capture_output=True, text=True)
    assert res.returncode == 0
