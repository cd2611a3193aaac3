import json
import subprocess
import sys

import pytest

from addilog.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rho(capsys):
    code, out, _ = run(capsys, "tb2", "rho", "t^2", "t")
    assert code == 0 and out.strip() == "rho = -1"
    code, out, _ = run(capsys, "tb2", "rho", "t^2", "t", "--json")
    assert json.loads(out) == {"value": "-1"}


def test_tame_with_hints(capsys):
    code, out, _ = run(capsys, "tb2", "tame", "t^2", "a*(1-a)/(t-1)", "--field", "Q(a)", "--hints", "1/a,1/(1-a)")
    assert code == 0
    assert "(2*a)⊗(a)" in out


def test_tame_non_split_is_an_error(capsys):
    code, _, err = run(capsys, "tb2", "tame", "t^2", "t/(t-1)")
    assert code == 2 and "NonSplit" in err


@pytest.mark.parametrize("argv", [
    ["tb2", "cathelineau", "a", "--field", "Q(a)"],
    ["tb2", "four-term", "a", "b", "--field", "Q(a,b)"],
    ["tb2", "inversion", "2"],
    ["tb2", "entropy"],
    ["lie", "dsq", "<a>_4", "--field", "Q(a)"],
    ["chow", "reciprocity", "t; 1+t/2; 1-a^2*t^2/4", "--field", "Q(a)"],
    ["chow", "modulus", "t; (1-t)*(1-2*t)/(1-3*t)"],
    ["as", "verify", "--p", "3"],
    ["as", "heisenberg", "--p", "2", "--trials", "10"],
])
def test_passing_commands(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    assert "FAIL" not in out


def test_check_failures_exit_1(capsys):
    bad = "t; 1-t^2*a*(1-a)/(t-1); a*(1-a)/(t-1)"
    code, out, _ = run(capsys, "chow", "good-position", bad, "--field", "Q(a)")
    assert code == 1 and "(1,∞,∞)" in out
    code, out, _ = run(capsys, "chow", "modulus", "t; 1-x*t", "--field", "Q(x)")
    assert code == 1 and "(t): 2·1 > 1" in out


def test_boundary_and_points(capsys):
    code, out, _ = run(capsys, "chow", "boundary", "t/4; 1+t/6; 1-t^2/4")
    assert code == 0
    for pt in ("(-3/2, -8)", "(1/2, 4/3)", "(-1/2, 2/3)"):
        assert pt in out
    code, out, _ = run(capsys, "chow", "psi", "1/a; a", "--field", "Q(a)")
    assert code == 0 and out.strip() == "psi = (1) d(a)"
    code, out, _ = run(capsys, "chow", "phi", "2; 3; 5")
    assert code == 0 and "(1/2, 3, 5)" in out
    code, out, _ = run(capsys, "chow", "norm", "1+u; b")
    assert code == 0 and "(1/2, b)" in out


def test_lie_boundary(capsys):
    code, out, _ = run(capsys, "lie", "boundary", "{a}_2", "--field", "Q(a)")
    assert code == 0 and "{a}_1" in out and "{-a + 1}_1" in out


def test_as_delta(capsys):
    code, out, _ = run(capsys, "as", "delta", "--p", "2")
    assert code == 0 and "y" in out


def test_usage_errors_exit_2(capsys):
    code, _, err = run(capsys, "tb2", "rho", "(1+t", "1")
    assert code == 2 and "offset 4" in err
    code, _, err = run(capsys, "tb2", "rho", "t^2", "z")
    assert code == 2 and "UnknownVariable" in err
    code, _, err = run(capsys, "tb2", "cathelineau", "a", "--field", "Fp(4)")
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["tb2", "nonsense"])
    assert info.value.code == 2


def test_verify_all_json(capsys):
    code, out, _ = run(capsys, "verify-all", "--suite", "lie", "--json", "--trials", "5")
    assert code == 0
    data = json.loads(out)
    assert list(data) == ["config", "checks", "summary"]
    assert [c["id"] for c in data["checks"]] == sorted(c["id"] for c in data["checks"])
    assert all(list(c) == ["id", "paper_ref", "status", "witness", "millis"] for c in data["checks"])
    assert data["summary"]["fail"] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "addilog", "tb2", "rho", "t^3", "t"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and proc.stdout.strip() == "rho = 0"
