import json
import subprocess
import sys

from rlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_expand_trivial(capsys):
    code, out = run(capsys, "expand", "f_trig", "--N", "1", "--order", "3")
    doc = json.loads(out)
    assert code == 0
    assert doc["terms"] == [{"exponents": [], "num": "1", "den": "1"}]
    code, out = run(capsys, "expand", "f_nonstat", "--N", "2", "--order", "0")
    assert json.loads(out)["terms"] == [{"exponents": [0, 0], "num": "1", "den": "1"}]


def test_expand_spectral_point(capsys):
    # s = (t q, 1) with q = 4/9, t = 3/4
    code, out = run(capsys, "expand", "--N", "2", "--order", "2", "--r", "2/3", "--t", "3/4", "--s", "1/3,1")
    doc = json.loads(out)
    coeffs = {tuple(t["exponents"]): (t["num"], t["den"]) for t in doc["terms"]}
    assert coeffs[(1,)] == ("1", "1")
    assert doc["variables"] == ["z1"]


def test_expand_ordering_and_determinism(capsys):
    args = ("expand", "f_nonstat", "--N", "2", "--order", "3", "--seed", "4")
    _, a = run(capsys, *args)
    _, b = run(capsys, *args)
    assert a == b
    exps = [t["exponents"] for t in json.loads(a)["terms"]]
    degs = [sum(e) for e in exps]
    assert degs == sorted(degs)


def test_expand_pole(capsys):
    code, out = run(capsys, "expand", "--N", "2", "--order", "2", "--r", "2/3", "--t", "3/5", "--s", "4/9,1")
    assert code == 2
    assert json.loads(out)["error"]["type"] == "pole"


def test_invalid_input(capsys):
    code, out = run(capsys, "expand", "--N", "2", "--s", "1/2")
    assert code == 2 and json.loads(out)["error"]["type"] == "invalid"


def test_check(capsys):
    code, out = run(capsys, "check", "euler", "--order", "6")
    doc = json.loads(out)
    assert code == 0 and doc["results"][0]["status"] == "pass"
    code, out = run(capsys, "check", "macdonald", "--N", "2", "--lambda", "1,0")
    assert code == 0 and json.loads(out)["results"][0]["passed"]
    code, out = run(capsys, "check", "nonstat_T_eigen", "--N", "2", "--order", "2", "--strict")
    assert code == 0 and json.loads(out)["results"][0]["status"] == "consistent"


def test_check_unknown(capsys):
    code, out = run(capsys, "check", "nope")
    assert code == 2


def test_check_plain_and_jobs(capsys):
    code, out = run(capsys, "check", "euler", "double_poch_product", "--order", "4", "--jobs", "2", "--plain")
    assert code == 0
    assert "euler" in out and "double_poch_product" in out and "pass" in out


def test_bounds(capsys):
    code, out = run(capsys, "bounds", "--N", "2", "--order", "4")
    doc = json.loads(out)
    assert code == 0 and doc["float"] is True
    assert doc["bounds"]["passed"] and doc["partial_sums"]["passed"]


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "rlab.cli", "expand", "--N", "2", "--order", "1", "--plain"],
                         capture_output=True, text=True, check=True).stdout
    assert out.startswith("f_trig")
