import json
import subprocess
import sys

import pytest

from plane3jack.cli import EXIT_FAIL, EXIT_OK, EXIT_OUT_OF_ALGEBRA, EXIT_USAGE, content_hash, main


def run(args, capsys):
    code = main(args)
    return code, capsys.readouterr()


def test_verify_json(capsys):
    code, out = run(["verify", "--level", "2", "--jmax", "2", "--format", "json"], capsys)
    assert code == EXIT_OK
    doc = json.loads(out.out)
    assert doc["schema_version"] == 1
    assert doc["results"]["passed"] is True
    assert doc["input_hash"] == content_hash(doc["config"])


def test_deterministic(capsys):
    args = ["tables", "--norms", "--central", "--format", "json"]
    _, a = run(args, capsys)
    _, b = run(args, capsys)
    assert a.out == b.out


def test_usage_errors(capsys):
    assert run(["tables"], capsys)[0] == EXIT_USAGE
    assert run(["bogus"], capsys)[0] == EXIT_USAGE
    assert run(["verify", "--level", "9"], capsys)[0] == EXIT_USAGE
    assert run(["jack", "--level", "5"], capsys)[0] == EXIT_USAGE
    assert run(["tables", "--bracket", "1,2"], capsys)[0] == EXIT_USAGE
    assert run(["verify", "--c0-scale", "x"], capsys)[0] == EXIT_USAGE


def test_out_of_algebra(capsys):
    code, out = run(["tables", "--bracket", "1,2,-2,3"], capsys)
    assert code == EXIT_OUT_OF_ALGEBRA and "out of algebra" in out.err


def test_bracket_text(capsys):
    code, out = run(["tables", "--bracket", "1,1,-1,1"], capsys)
    assert code == EXIT_OK and "central" in out.out


def test_tables_text_and_latex(capsys):
    code, out = run(["tables", "--q", "--depth", "2"], capsys)
    assert code == EXIT_OK and out.out.startswith("[q]") and "Q_1,1" in out.out
    code, out = run(["tables", "--oracle-weight", "2", "--format", "latex"], capsys)
    assert code == EXIT_OK and "P_{" in out.out


def test_jack_latex(tmp_path, capsys):
    code, _ = run(["jack", "--level", "2", "--format", "latex", "--out", str(tmp_path)], capsys)
    assert code == EXIT_OK
    tex = (tmp_path / "jack.tex").read_text()
    assert tex.startswith("\\documentclass") and tex.count("\\begin{align*}") == 4


def test_jack_json(capsys):
    code, out = run(["jack", "--level", "3", "--format", "json"], capsys)
    res = json.loads(out.out)["results"]
    assert code == EXIT_OK and res["passed"] and res["s3_equivariant"]
    assert all(res["eigen"].values())


@pytest.mark.slow
def test_gamma_fit_exit_codes(capsys):
    assert run(["verify", "--level", "0", "--gamma-fit"], capsys)[0] == EXIT_FAIL
    assert run(["verify", "--level", "0", "--gamma-fit", "--c0-scale", "1/2"], capsys)[0] == EXIT_OK


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "plane3jack", "tables", "--central"], capture_output=True, text=True)
    assert r.returncode == 0 and "c_2 == kappa form = True" in r.stdout
