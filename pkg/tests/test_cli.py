import json

import pytest

from mrspectra.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--table", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "state,inv_b,scheme,value,paper_ref,deviation,excluded"
    assert lines[1].startswith("2p,0.025,approx1,-0.120527265,-0.120527265,")


def test_table_markdown_molecule(capsys):
    code, out, _ = run(capsys, "--format", "markdown", "table", "--table", "3", "--molecule", "CH")
    assert code == 0
    assert "-5.419968453" in out


def test_global_flags_after_subcommand(capsys, tmp_path):
    dest = tmp_path / "e.json"
    code, out, _ = run(capsys, "energy", "--state", "2p", "--inv-b", "0.025", "--format", "json",
                       "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())[0]["value"] == pytest.approx(-0.120527265, abs=5e-9)


@pytest.mark.parametrize("method", ["closed", "aim"])
def test_energy_methods(capsys, method):
    code, out, _ = run(capsys, "energy", "--state", "3p", "--inv-b", "0.05", "--scheme", "approx3",
                       "--method", method)
    assert code == 0
    assert float(out.splitlines()[1].split(",")[3]) == pytest.approx(-0.035267202, abs=5e-9)


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "--state", "2p", "--inv-b", "0.025", "--points", "4000")
    assert code == 0
    assert float(out.splitlines()[1].split(",")[3]) == pytest.approx(-0.1205271, abs=2e-6)


def test_wavefunction_command(capsys):
    code, out, _ = run(capsys, "wavefunction", "--state", "3p", "--inv-b", "0.025", "--r", "1", "5")
    assert code == 0
    assert out.splitlines()[0] == "r,R"
    assert len(out.splitlines()) == 3


def test_calibrate_command(capsys):
    code, out, _ = run(capsys, "calibrate")
    assert code == 0
    assert "93115.0" in out and "ratio" in out
    code, out, _ = run(capsys, "--format", "json", "calibrate")
    assert json.loads(out)["k_fit"] == pytest.approx(93115.0, rel=1e-6)


def test_physical_units(capsys):
    code, out, _ = run(capsys, "--units", "physical", "energy", "--state", "2p", "--inv-b", "0.025",
                       "--molecule", "CH")
    assert code == 0
    assert float(out.splitlines()[1].split(",")[3]) == pytest.approx(-5.419968453 / 1.000370e4, rel=1e-5)


@pytest.mark.parametrize("argv", [
    ["table", "--table", "3"],
    ["table", "--table", "9"],
    ["energy", "--state", "2x", "--inv-b", "0.025"],
    ["energy", "--state", "2p", "--inv-b", "0.025", "--molecule", "N2"],
    ["--units", "atomic", "energy", "--state", "2p", "--inv-b", "0.025", "--molecule", "CH"],
    ["energy", "--state", "2p", "--inv-b", "0.025", "--scheme", "exact"],
    ["bogus"],
])
def test_validation_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_convergence_exit_code(capsys):
    code, _, err = run(capsys, "energy", "--state", "2p", "--inv-b", "0.025", "--method", "aim",
                       "--tol", "1e-30")
    assert code == 2
    assert "convergence" in err


def test_io_exit_code(capsys, tmp_path):
    code, _, _ = run(capsys, "table", "--table", "1", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 3


def test_module_entry_point():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-m", "mrspectra", "energy", "--state", "2p", "--inv-b", "0.025"],
                         capture_output=True, text=True, check=True).stdout
    assert "-0.120527265" in out
