import io
import json
import subprocess
import sys

import pytest

from delannoy.cli import CliConfig, main, parse_config


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv,text", [
    (["gen", "d", "--n", "2", "--route", "def", "--output", "pretty"], "2x^2+2x+r+1\n"),
    (["gen", "D", "--n", "3", "--route", "rec", "--output", "pretty"], "x^3-(6r+5)x\n"),
    (["gen", "d", "--n", "0", "--output", "pretty"], "1\n"),
    (["gen", "d", "--n", "3", "--route", "gf", "--output", "pretty"], "4/3x^3+2x^2+(2r+8/3)x+r+1\n"),
    (["gen", "D", "--n", "2", "--route", "egf", "--output", "pretty"], "x^2-2r-1\n"),
])
def test_gen_pretty(argv, text):
    code, out, _ = run(*argv)
    assert code == 0 and out == text


def test_gen_json_and_through():
    code, out, _ = run("gen", "D", "--n", "3", "--route", "from-d", "--through")
    lines = [json.loads(l) for l in out.splitlines()]
    assert code == 0 and [l["n"] for l in lines] == [0, 1, 2, 3]
    assert lines[1]["poly"] == {"vars": ["x", "y", "r", "t"],
                                "terms": [{"exp": [1, 0, 0, 0], "re": "1", "im": "0"}]}
    assert all(l["route"] == "from-d" for l in lines)


def test_gen_delannoy_csv():
    code, out, _ = run("gen", "delannoy", "--n", "3", "--output", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "m,n,value" and "3,3,63" in lines and len(lines) == 17


@pytest.mark.parametrize("argv", [
    ["gen", "d", "--n", "2", "--route", "egf"],
    ["gen", "D", "--n", "2", "--route", "def"],
    ["gen", "d", "--n", "-1"],
    ["gen", "d", "--n", "2", "--output", "csv"],
    ["verify", "--check", "nosuch"],
    ["verify"],
    ["congruence", "--check", "sun1.4", "--x-range", "5..-5"],
    ["congruence", "--check", "sun1.4", "--x-range", "oops"],
    ["congruence", "--check", "nope"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2


def test_unknown_check_lists_catalog():
    code, _, err = run("verify", "--check", "nosuch")
    assert code == 2 and "thm2.7" in err and "valid checks" in err


def test_verify_product_formula():
    code, out, _ = run("verify", "--check", "thm2.7", "--max", "6", "--workers", "1")
    lines = [json.loads(l) for l in out.splitlines()]
    assert code == 0
    assert len(lines) == 50
    assert all(l["status"] == "pass" for l in lines[:-1])
    assert lines[-1]["summary"]["checks"] == {"thm2.7": {"pass": 49, "fail": 0}}


def test_verify_pretty_and_env_default(monkeypatch):
    monkeypatch.setenv("DELANNOY_MAX_N", "3")
    code, out, _ = run("verify", "--check", "eq2.3", "--check", "thm3.6", "--output", "pretty",
                       "--workers", "1")
    assert code == 0
    assert out.splitlines()[0].startswith("ok   eq2.3")
    assert parse_config(["verify", "--all"]).max_n == 3
    monkeypatch.setenv("DELANNOY_MAX_N", "ten")
    assert run("verify", "--all")[0] == 2


def test_verify_failure_exit_1(monkeypatch):
    from delannoy.multipoly import X
    from delannoy.verify.catalog import CATALOG, IdentityCheck, n_range
    from delannoy.verify.report import compare
    monkeypatch.setitem(CATALOG, "zz.bogus", IdentityCheck(
        "zz.bogus", "wrong", "n", n_range(), lambda n: compare(X, X + n)))
    code, out, _ = run("verify", "--check", "zz.bogus", "--max", "2", "--workers", "1")
    assert code == 1
    assert json.loads(out.splitlines()[-1])["summary"]["failed"] == 2


def test_verify_deterministic_bytes():
    argv = ["verify", "--check", "thm3.7", "--check", "cor3.3", "--max", "5", "--no-timings"]
    a = run(*argv, "--workers", "1")[1]
    b = run(*argv, "--workers", "2")[1]
    assert a == b


@pytest.mark.parametrize("argv", [
    ["congruence", "--check", "sun1.4", "--n-max", "10", "--x-range", "-5..5"],
    ["congruence", "--check", "thm2.5", "--n-max", "5", "--r-max", "2", "--x-range", "0..5"],
    ["congruence", "--check", "sun1.5", "--n-max", "1", "--m-max", "2", "--x-range", "-2..2"],
])
def test_congruence_commands(argv):
    code, out, err = run(*argv)
    rows = out.splitlines()
    assert code == 0
    assert rows[0] == "check,n,r,x,m,eps,value,modulus,divisible"
    assert all(r.endswith(",true") for r in rows[1:])
    assert json.loads(err)["failures"] == 0
    assert run(*argv)[1] == out


def test_congruence_modulus_one():
    _, out, _ = run("congruence", "--check", "sun1.5", "--n-max", "1", "--x-range", "0..1")
    assert all(r.split(",")[7] == "1" for r in out.splitlines()[1:])


def test_congruence_json_output():
    code, out, _ = run("congruence", "--check", "sun1.4", "--n-max", "4", "--x-range", "0..2",
                       "--output", "json")
    assert code == 0 and json.loads(out)["rows"] == 12


def test_moments_command():
    code, out, _ = run("moments", "--n", "4", "--output", "pretty", "--orthogonality")
    lines = out.splitlines()
    assert code == 0
    assert lines[:3] == ["mu_0 = 1", "mu_1 = 0", "mu_2 = 2r+1"]
    assert json.loads(lines[-1]) == {"orthogonality": {"pairs": 25, "failed": 0}}
    code, out, _ = run("moments", "--n", "2")
    assert json.loads(out.splitlines()[2])["D_basis"][1] == {"vars": ["x", "y", "r", "t"],
                                                             "terms": []}


def test_list_checks():
    code, out, _ = run("list-checks")
    names = [l.split("\t")[0] for l in out.splitlines()]
    assert code == 0 and "thm2.7.certificate" in names and names == sorted(names)


def test_config_dataclass():
    cfg = parse_config(["congruence", "--check", "thm2.5", "--x-range", "-3..3", "--r-max", "1"])
    assert isinstance(cfg, CliConfig)
    assert cfg.x_range == (-3, 3) and cfg.r_max == 1 and cfg.n_max == 50


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "delannoy", "gen", "D", "--n", "2",
                           "--output", "pretty"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and proc.stdout == "x^2-2r-1\n"
