import json
import subprocess
import sys

import pytest

from prorel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_obstruct_example(capsys):
    code, out, _ = run(capsys, "obstruct", "thm1", "--p", "3", "--k", "1", "--m", "2", "--l", "1", "--u", "1",
                       "--relation", "x^3 [y1,y2]")
    assert code == 0
    d = json.loads(out)
    assert d["schema"] == "1" and d["verdict"] == "obstructed" and d["image_order"] == 3


def test_metacyclic_example(capsys):
    code, out, _ = run(capsys, "metacyclic", "--p", "3", "--m", "2", "--k", "1")
    assert code == 0
    d = json.loads(out)
    assert d["passed"] and all(a["passed"] for a in d["assertions"])


def test_hypothesis_violation_exits_2(capsys):
    code, out, err = run(capsys, "obstruct", "thm1", "--p", "3", "--k", "1", "--m", "2", "--l", "1", "--u", "1",
                         "--relation", "x^3 [x,y1]")
    assert code == 2 and out == "" and "HypothesisViolation" in err


@pytest.mark.parametrize("argv", [
    ["metacyclic", "--p", "4", "--k", "1", "--m", "2"],
    ["unipotent", "--p", "3", "--k", "3"],
    ["padic", "--p", "3", "--k", "1", "--u", "3", "--N", "8"],
    ["obstruct", "thm1", "--p", "3", "--k", "1", "--l", "1", "--u", "1", "--relation", "x^3 [y1,y2]"],
    ["obstruct", "thm1", "--p", "3", "--k", "1", "--m", "2", "--l", "1", "--u", "1", "--relation", "x^3 [y1"],
])
def test_bad_parameters_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_usage_error(capsys):
    code, _, _ = run(capsys, "nonsense")
    assert code == 2


def test_resource_limit(capsys):
    code, _, err = run(capsys, "unipotent", "--p", "5", "--k", "3", "--max-order", "100")
    assert code == 2 and "ResourceLimitError" in err


@pytest.mark.parametrize("argv", [
    ["unipotent", "--p", "3", "--k", "2", "--congruence"],
    ["dpoly", "--p", "5", "--random", "50", "--seed", "7"],
    ["padic", "--p", "5", "--k", "2", "--u", "3", "--N", "12"],
    ["sweep", "--theorems", "thmT,filtration", "--p", "3", "--m", "2,3", "--seed", "2"],
])
def test_json_is_byte_identical(capsys, argv):
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert json.loads(out1)["passed"]


def test_text_format(capsys):
    code, out, _ = run(capsys, "padic", "--p", "3", "--k", "1", "--u", "2", "--N", "6", "--format", "text")
    assert code == 0 and "PASS" in out


def test_sweep_text_lists_violations(capsys):
    code, out, _ = run(capsys, "sweep", "--theorems", "l<m", "--p", "3", "--k", "1", "--m", "1,2", "--format", "text")
    assert code == 0
    assert out.startswith("sweep:") and "hypothesis-violation" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prorel", "padic", "--p", "3", "--k", "1", "--u", "1", "--N", "8"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["v"] == 1


def test_selftest_command():
    proc = subprocess.run([sys.executable, "-m", "prorel", "selftest"], capture_output=True, text=True)
    assert proc.returncode == 0
    d = json.loads(proc.stdout)
    assert d["passed"] and len([k for k in d if k[0].isdigit()]) == 8
    assert proc.stderr.count("PASS") >= 8


def test_max_order_does_not_leak(capsys):
    from prorel import groups as gr
    before = gr.DEFAULT_MAX_ORDER
    run(capsys, "unipotent", "--p", "5", "--k", "3", "--max-order", "100")
    assert gr.DEFAULT_MAX_ORDER == before
