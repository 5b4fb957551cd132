import hashlib
import json
import os
import subprocess
import sys

import pytest

from steinsahi.cli import SVG_COLORS, main
from steinsahi.kernel import PositivityClass


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_tsv(capsys):
    code, out, _ = run(capsys, "expand", "--n", "1", "--sigma", "-0.5", "--tau", "-0.4", "--mmax", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 12
    row = dict(line.split("\t")[:2] for line in lines[1:])
    assert float(row["0"]) == pytest.approx(6.725769301659749, rel=1e-12)


def test_expand_json(capsys):
    code, out, _ = run(capsys, "expand", "--n", "2", "--sigma", "-0.5", "--tau", "-0.4",
                       "--mmax", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1 and len(doc["entries"]) == 10


def test_expand_complex_parameter(capsys):
    code, out, _ = run(capsys, "expand", "--n", "1", "--sigma", "0.2+0.5j", "--tau", "-0.1", "--mmax", "1")
    assert code == 0 and len(out.strip().splitlines()) == 4


def test_expand_pole_exit_code(capsys):
    code, _, err = run(capsys, "expand", "--n", "1", "--sigma", "-0.5", "--tau", "-0.5")
    assert code == 2 and "error" in err


def test_bad_cutoff(capsys):
    code, _, _ = run(capsys, "expand", "--n", "1", "--sigma", "0.5", "--tau", "0.1", "--mmax", "0")
    assert code == 2


def test_posmap_tsv(capsys):
    code, out, _ = run(capsys, "posmap", "--n", "1", "--sigma-range", "-2", "0", "--tau-range", "-1", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "sigma\ttau\tclass"
    assert len(lines) == 1 + 8 * 8
    first = lines[1].split("\t")
    assert float(first[0]) == -1.875 and float(first[1]) == -0.875


def test_posmap_svg_deterministic(tmp_path):
    digests = []
    for name in ("a.svg", "b.svg"):
        path = tmp_path / name
        assert main(["posmap", "--n", "2", "--format", "svg", "--out", str(path)]) == 0
        text = path.read_text()
        assert text.startswith("<svg") or text.startswith("<?xml")
        digests.append(hashlib.md5(text.encode()).hexdigest())
    assert digests[0] == digests[1]
    assert SVG_COLORS[PositivityClass.PositiveDefinite] in text


def test_blowup_tsv_and_json(capsys):
    code, out, _ = run(capsys, "blowup", "--n", "2", "--alpha", "1", "--mmax", "2")
    assert code == 0
    assert "# L_0\tZ(0)\tsign +" in out
    assert "# Tail\t6 signatures" in out
    code, out, _ = run(capsys, "blowup", "--n", "2", "--alpha", "1", "--mmax", "2", "--format", "json")
    doc = json.loads(out)
    assert [p["j"] for p in doc["pieces"]] == [0, 1]
    assert len(doc["tail"]) == 6


def test_blowup_alpha_out_of_range(capsys):
    code, _, _ = run(capsys, "blowup", "--n", "2", "--alpha", "2")
    assert code == 2


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "signatures", "--quick")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["schema"] == 1
    assert {c["suite"] for c in doc["checks"]} == {"signatures"}


def test_su11(capsys):
    code, out, _ = run(capsys, "su11", "--p", "0.3", "--q", "0.4")
    assert code == 0
    assert "Complementary" in out and "asymptotic_exponent" in out


def test_config_env(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mmax": 2}))
    monkeypatch.setenv("STEINSAHI_CONFIG", str(cfg))
    code, out, _ = run(capsys, "expand", "--n", "1", "--sigma", "-0.5", "--tau", "-0.4")
    assert code == 0 and len(out.strip().splitlines()) == 6
    cfg.write_text(json.dumps({"mmax": 0}))
    code, _, _ = run(capsys, "expand", "--n", "1", "--sigma", "-0.5", "--tau", "-0.4")
    assert code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "steinsahi", "expand", "--n", "1", "--sigma", "0.3",
                        "--tau", "0.2", "--mmax", "1"], capture_output=True, text=True,
                       env={**os.environ, "STEINSAHI_NUMBA": "0"})
    assert r.returncode == 0 and len(r.stdout.strip().splitlines()) == 4
