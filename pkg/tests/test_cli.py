import io
import json
import subprocess
import sys

import pytest

from invbasis.cli import run_command
from invbasis.matfile import bundled


def run(*argv):
    out = io.StringIO()
    code = run_command(list(argv), out)
    return code, json.loads(out.getvalue())


@pytest.fixture
def write(tmp_path):
    def _write(text, name="m.mat"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def test_smith_integer_example(write):
    code, out = run("smith", write("ring: int\nrows: 2\ncols: 2\n2, 4\n6, 8\n"))
    assert code == 0 and out["schema"] == 1
    assert out["invariant_factors"] == ["2", "4"]


def test_smith_poly_coefficient_arrays(write):
    code, out = run("smith", write("ring: polyQ\nx, x; x, x^2\n"))
    assert code == 0
    assert out["invariant_factors"] == [["0", "1"], ["0", "-1", "1"]]


def test_eig_on_identity(write):
    code, out = run("eig", write("ring: polyQ\n1, 0; 0, 1\n"), "--lambda", "5")
    assert code == 0 and out["eigenvalue"] is False


def test_eig_multiplicities(write):
    code, out = run("eig", write("ring: polyQ\nx, 0; 0, x^2*(x-1)\n"), "--lambda", "0")
    assert out["eigenvalue"] is True and out["partial_multiplicities"] == [2, 1]


def test_rootvectors_worked_example():
    code, out = run("rootvectors", str(bundled()), "--lambda", "0",
                    "--vector", "1,-exp(z),0", "--vector", "1,-2*exp(z),0")
    assert code == 0
    assert out["orders"] == [1, 2] and out["maximal"] is True
    assert "certified" in out


def test_rootvectors_maximal_set_poly(write):
    code, out = run("rootvectors", write("ring: polyQ\nx, 0; 0, x^2\n"), "--lambda", "0")
    assert code == 0 and out["orders"] == [2, 1] and out["source"] == "smith_transport"


def test_local_reports_certification():
    code, out = run("local", str(bundled()))
    assert code == 0
    assert out["orders"] == [1, 2] and out["rank"] == 2
    assert out["rank_certified"] is False and out["certified"] is False


def test_local_insufficient_truncation():
    code, out = run("local", str(bundled()), "--trunc", "2")
    assert code == 1 and out["error"]["type"] == "InsufficientTruncation"


def test_nullbasis_and_check_invertible(write):
    code, out = run("nullbasis", write("ring: polyQ\nx^2, x\n"))
    assert code == 0 and out["dimension"] == 1
    code, out = run("check-invertible", write("ring: polyQ\nx; x^2\n", "q.mat"), "--samples", "5")
    assert code == 0 and out["invertible"] is False
    conds = out["conditions"]
    assert conds["full_rank_mod_primes"]["mode"] == "sampled"
    assert len(conds["full_rank_mod_primes"]["points"]) == 5
    assert out["minor_gcd"] == ["0", "1"]


def test_kerlambda(write):
    code, out = run("kerlambda", write("ring: polyQ\nx, -x\n"), "--lambda", "3")
    assert code == 0 and out["dimension"] == 1
    assert out["basis"] == [["1", "1"]] and out["certified"] is True


def test_domain_error_exit_1(write):
    code, out = run("eig", write("ring: polyQ\nx\n"))
    assert code == 1 and "error" in out
    code, out = run("smith", write("ring: polyQ\nx +\n"))
    assert code == 1 and out["error"]["type"] == "parse"


def test_usage_errors_exit_2(tmp_path):
    code, out = run("smith", str(tmp_path / "missing.mat"))
    assert code == 2
    with pytest.raises(SystemExit) as err:
        run_command(["frobnicate", "x.mat"], io.StringIO())
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        run_command(["eig", "x.mat", "--lambda", "abc"], io.StringIO())
    assert err.value.code == 2


def test_output_is_deterministic(write):
    path = write("ring: polyQ\nx, 1; 1, x\n")
    a, b = io.StringIO(), io.StringIO()
    run_command(["check-invertible", path, "--seed", "4"], a)
    run_command(["check-invertible", path, "--seed", "4"], b)
    assert a.getvalue() == b.getvalue()


def test_pretty_and_json_modes(write):
    path = write("ring: int\n3\n")
    compact, pretty = io.StringIO(), io.StringIO()
    run_command(["smith", path], compact)
    run_command(["smith", path, "--pretty"], pretty)
    assert "\n" not in compact.getvalue().strip() and "\n" in pretty.getvalue().strip()
    assert json.loads(compact.getvalue()) == json.loads(pretty.getvalue())


def test_certified_siblings_on_analytic_commands():
    for cmd in (["local"], ["eig", "--lambda", "0"], ["kerlambda", "--lambda", "0"],
                ["rootvectors", "--lambda", "0"]):
        code, out = run(cmd[0], str(bundled()), *cmd[1:])
        assert code == 0, out
        assert isinstance(out["certified"], bool)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "invbasis", "eig", str(bundled()), "--lambda", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["eigenvalue"] is True
