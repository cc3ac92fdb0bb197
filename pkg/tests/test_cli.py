from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from singerlat.cli import load_schema, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_lattice_gamma2_text(capsys):
    code, out, _ = run(capsys, "lattice", "--family", "a2-cyclic", "--q", "2",
                       "--delta", "0,1,3", "--delta", "0,1,3", "--delta", "0,1,3")
    assert code == 0
    assert "s1 s2 s3\n" in out and "s1^3 s2^3 s3^3\n" in out and "s1^7\n" in out


def test_homology_gamma3(capsys):
    code, out, _ = run(capsys, "homology", "--family", "a2-cyclic", "--q", "3", "--delta", "0,1,3,9",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["reports"][0]["data"]["H1"] == "Z/13 x Z/13"


def test_not_prime_power(capsys):
    code, _, err = run(capsys, "plane", "--q", "6")
    assert code != 0 and "NotPrimePower" in err


def test_invalid_delta(capsys):
    code, _, err = run(capsys, "lattice", "--q", "2", "--delta", "0,1,2")
    assert code == 2 and "not a planar difference set" in err


def test_unsupported_quadrangle(capsys):
    code, _, err = run(capsys, "quadrangle", "--q", "2")
    assert code == 2 and "UnsupportedOrder" in err


def test_failed_check_gives_nonzero_exit(capsys):
    code, out, _ = run(capsys, "homology", "--family", "c2-one-panel", "--q", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "fail"


@pytest.mark.parametrize("argv", [
    ["plane", "--q", "3"],
    ["quadrangle", "--q", "3"],
    ["crosscheck", "--q", "3", "--family", "c2-two-panel"],
    ["hjelmslev", "--q", "2", "--jobs", "2"],
    ["homology", "--q", "2", "--ordering", "0,2,1", "--ordering", "0,1,2", "--ordering", "0,1,2"],
])
def test_json_reports_validate_and_are_deterministic(capsys, argv):
    code, first, _ = run(capsys, *argv, "--format", "json")
    _, second, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    assert first == second
    jsonschema.validate(json.loads(first), load_schema())


def test_reordering_changes_h1(capsys):
    _, out, _ = run(capsys, "homology", "--q", "2", "--delta", "0,1,3", "--ordering", "0,2,1",
                    "--ordering", "0,1,2", "--ordering", "0,1,2", "--format", "json")
    assert json.loads(out)["reports"][0]["data"]["H1"] == "Z/7"


def test_output_file_and_cache(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SINGERLAT_CACHE", str(tmp_path / "cache"))
    target = tmp_path / "report.json"
    assert main(["lattice", "--q", "3", "--format", "json", "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(target.read_text())
    assert doc["tool"] == "singerlat" and doc["input"]["q"] == 3
    cached = tmp_path / "cache" / "difference-set-q3.txt"
    assert "entries = 0,4,10,12" in cached.read_text()
    assert (tmp_path / "cache" / "plane-q3.txt").exists()
    # second run reads the cache and produces the same report
    assert main(["lattice", "--q", "3", "--format", "json", "--output", str(tmp_path / "again.json")]) == 0
    assert (tmp_path / "again.json").read_text() == target.read_text()


def test_all_command_q3(capsys):
    code, out, _ = run(capsys, "all", "--q", "3", "--format", "json")
    doc = json.loads(out)
    failing = {r["subject"] for r in doc["reports"] if r["status"] == "fail"}
    # the stated (Z/q)^6 abelianisation of the one-panel lattice does not hold at q = 3
    assert failing == {"C̃₂ one-panel H1 q=3"}
    assert code == 1


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "singerlat.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("singerlat ")
