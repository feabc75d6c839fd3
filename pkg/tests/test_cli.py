from __future__ import annotations

import json
import subprocess
import sys

import pytest

from fcfam.cli import EXIT_CAP, EXIT_FALSE, EXIT_TRUE, EXIT_USAGE, main


def run(*args):
    return main([str(a) for a in args])


def test_classify_to_stdout(capsys):
    assert run("classify", "{{0,1,2}}") == EXIT_TRUE
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "nonFC"
    assert data["witnesses"]


def test_classify_and_verify(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run("classify", "{{0,1,2},{0,1,3},{0,2,3}}", "--out", out) == EXIT_TRUE
    assert "FC" in capsys.readouterr().out
    assert run("verify", out) == EXIT_TRUE
    assert "valid" in capsys.readouterr().out


def test_verify_tampered(tmp_path):
    out = tmp_path / "c.json"
    run("classify", "{{0,1,2}}", "--out", out)
    data = json.loads(out.read_text())
    for w in data["witnesses"]:
        w["coefficient"] = 0
    out.write_text(json.dumps(data))
    assert run("verify", out) == EXIT_FALSE


def test_verify_missing_file(tmp_path):
    assert run("verify", tmp_path / "none.json") == EXIT_USAGE


def test_verify_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    assert run("verify", p) == EXIT_USAGE


def test_malformed_family():
    assert run("classify", "{{0,1}") == EXIT_USAGE


def test_unknown_command():
    assert run("frobnicate") == EXIT_USAGE


def test_iteration_cap():
    assert run("classify", "{{0,1,2},{0,1,3},{0,2,3}}", "--max-iterations", 1) == EXIT_CAP


def test_enumerate(capsys):
    assert run("enumerate", "--n", 4, "--partition", "[0,0,0,2]", "--irreducible") == EXIT_TRUE
    captured = capsys.readouterr()
    assert captured.out.split() == ["{{0,1,2},{0,1,3}}"]
    assert "1 families" in captured.err


def test_enumerate_bad_partition():
    assert run("enumerate", "--n", 2, "--partition", "[0,0,0,1]") == EXIT_USAGE
    assert run("enumerate", "--n", 2, "--partition", "zero") == EXIT_USAGE


def test_characterize_pipeline(tmp_path, capsys):
    d = tmp_path / "c4"
    assert run("characterize", "--n", 4, "--out", d) == EXIT_TRUE
    assert "3 minimal FC, 1 maximal nonFC" in capsys.readouterr().out
    assert {p.name for p in d.iterdir()} == {"families.json", "lf_ln.json", "manifest.json"}
    assert run("cover-check", "--n", 4, "--chars", d) == EXIT_TRUE
    assert "total coverage: ok" in capsys.readouterr().out
    csv_path = tmp_path / "s.csv"
    assert run("stats", "--n", 4, "--chars", d, "--out", csv_path) == EXIT_TRUE
    assert csv_path.read_text().startswith("L,count_fc,")
    assert run("enumerate", "--n", 4, "--partition", "[0,0,0,3]", "--irreducible", "--not-covered-by", d) == EXIT_TRUE
    assert "0 families" in capsys.readouterr().err


def test_characterize_wrong_n(tmp_path):
    d = tmp_path / "c3"
    run("characterize", "--n", 3, "--out", d)
    assert run("cover-check", "--n", 4, "--chars", d) == EXIT_USAGE


def test_characterize_needs_extended(tmp_path):
    assert run("characterize", "--n", 6, "--out", tmp_path / "x") == EXIT_USAGE


def test_characterize_cap(tmp_path):
    assert run("characterize", "--n", 5, "--out", tmp_path / "x", "--max-classify", 3) == EXIT_CAP


def test_export_lp(tmp_path):
    w = tmp_path / "w.json"
    w.write_text("[1,1,1]")
    out = tmp_path / "p.lp"
    assert run("export-lp", "{{0,1,2}}", "--weights", w, "--out", out) == EXIT_TRUE
    assert out.read_text().startswith("\\")
    w.write_text('{"a": 1}')
    assert run("export-lp", "{{0,1,2}}", "--weights", w, "--out", out) == EXIT_USAGE


def test_expand_counterexample(tmp_path, capsys):
    cert = tmp_path / "c.json"
    run("classify", "{{0,1,2}}", "--out", cert)
    big = tmp_path / "big.json"
    assert run("expand-counterexample", cert, "--out", big) == EXIT_TRUE
    assert "counterexample holds" in capsys.readouterr().out
    data = json.loads(big.read_text())
    assert data["universe"] == len({e for s in data["family"] for e in s})


def test_expand_rejects_fc(tmp_path):
    cert = tmp_path / "c.json"
    run("classify", "{{0}}", "--out", cert)
    assert run("expand-counterexample", cert) == EXIT_USAGE


@pytest.mark.parametrize("args", [["--version"], ["classify", "--help"]])
def test_console_entry(args):
    proc = subprocess.run([sys.executable, "-m", "fcfam.cli", *args], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout
