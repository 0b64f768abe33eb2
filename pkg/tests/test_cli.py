import json
import os
import subprocess
import sys

import pytest

from dirac_linfty import cli
from dirac_linfty.report import InvariantViolation

from conftest import FIXTURES

BROKEN = os.path.join(FIXTURES, "broken_jacobi.json")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_example_abelian2_passes(capsys):
    code, out, _ = run(capsys, "example", "abelian(2)")
    assert code == cli.EXIT_OK and out.rstrip().endswith("PASS")


def test_example_list(capsys):
    code, out, _ = run(capsys, "example", "--list", "--json")
    assert code == 0
    assert "sl2_double_diag" in json.loads(out)["reports"][0]["data"]["entries"]


def test_brackets_sl2(capsys):
    code, out, _ = run(capsys, "brackets", "sl2_double_diag", "diag", "anti", "--json")
    assert code == 0
    data = json.loads(out)["reports"][0]["data"]
    assert data["ell_2 on generators"] == "identically zero"
    assert data["ell_3 on generators"] == {"m1*,m2*,m3*": {"1": "-1/16"}}


def test_broken_jacobi_fixture(capsys):
    code, out, _ = run(capsys, "validate", BROKEN, "--json")
    assert code == cli.EXIT_CHECK_FAILED
    doc = json.loads(out)
    jac = next(c for c in doc["reports"][0]["checks"] if c["name"] == "jacobi")
    assert not jac["passed"]
    assert jac["residuals"][0] == {"triple": ["e", "h", "f"], "residual": ["0", "1", "0", "0", "0", "0"]}


def test_broken_spec_rejected_by_other_commands(capsys):
    code, _, err = run(capsys, "brackets", BROKEN, "diag", "anti")
    assert code == cli.EXIT_PARSE and "fails validation" in err


@pytest.mark.parametrize("argv,code", [
    (["validate", "no_such_entry"], cli.EXIT_UNKNOWN_SELECTOR),
    (["brackets", "abelian(2)", "x", "nope"], cli.EXIT_UNKNOWN_SELECTOR),
    (["transport", "abelian(2)", "x", "y", "nope"], cli.EXIT_UNKNOWN_SELECTOR),
    (["acceptance", "11"], cli.EXIT_UNKNOWN_SELECTOR),
    (["transport", "abelian(2)", "x", "y", "--eps", "[[0, 0.5], [-0.5, 0]]"], cli.EXIT_PARSE),
    (["transport", "abelian(2)", "x", "y", "--eps", "[[0, \"1\"]]"], cli.EXIT_PARSE),
    (["transport", "abelian(2)", "x", "y", "--eps", "[[\"1\", \"1\"], [\"0\", \"0\"]]"],
     cli.EXIT_PRECONDITION),
    (["mc", "heisenberg_double", "curved_m", "curved_l"], cli.EXIT_PRECONDITION),
    (["brackets", "sl2_double_diag", "diag", "anti", "--arity", "2"], cli.EXIT_ARITY),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["brackets"])
    assert exc.value.code == cli.EXIT_USAGE


def test_invariant_violation_exit_code(capsys, monkeypatch):
    def boom(args):
        raise InvariantViolation("forced")
    monkeypatch.setattr(cli, "cmd_validate", boom)
    parser = cli.build_parser
    monkeypatch.setattr(cli, "build_parser", lambda: _rebind(parser(), boom))
    assert run(capsys, "validate", "abelian(1)")[0] == cli.EXIT_INVARIANT


def _rebind(parser, func):
    parser._subparsers._group_actions[0].choices["validate"].set_defaults(func=func)
    return parser


def test_reports_are_byte_identical(capsys):
    argv = ["mc", "sl2_double_diag", "diag", "anti", "--seed", "3", "--json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    doc = json.loads(first)
    assert doc["schema_version"] == 1 and doc["seed"] == 3 and doc["command"] == "mc"
    assert len(doc["inputs"]["digest"]) == 64
    assert "timing_seconds" not in doc


def test_seed_changes_inputs(capsys):
    a = json.loads(run(capsys, "complex", "--seed", "1", "--json")[1])
    b = json.loads(run(capsys, "complex", "--seed", "2", "--json")[1])
    assert a["passed"] and b["passed"]
    assert a["inputs"]["digest"] != b["inputs"]["digest"]


def test_explicit_matrices(capsys):
    code, out, _ = run(capsys, "mc", "abelian(2)", "x", "y", "--omega", '[["0", "1/2"], ["-1/2", "0"]]',
                       "--eps", '[["0", ["0", "1"]], [["0", "-1"], "0"]]', "--json")
    assert code == 0
    assert json.loads(out)["inputs"]["eps"] == [["0", "t"], ["-t", "0"]]


def test_complex_explicit(capsys):
    code, _, _ = run(capsys, "complex", "--phi", '[[["0", "1"]]]', "--phibar", '[[["0", "2"]]]',
                     "--rho", '[[["0", "0", "1"]]]')
    assert code == 0


def test_transport_by_name(capsys):
    code, out, _ = run(capsys, "transport", "sl2_double_diag", "diag", "anti", "graph_rst")
    assert code == 0 and "MC in (M, L')" in out


def test_timing_flag(capsys):
    doc = json.loads(run(capsys, "example", "abelian(1)", "--json", "--timing")[1])
    assert "timing_seconds" in doc


def test_acceptance_single_invocation():
    proc = subprocess.run([sys.executable, "-m", "dirac_linfty.cli", "acceptance", "6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.rstrip().endswith("PASS")
