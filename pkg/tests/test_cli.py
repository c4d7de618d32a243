import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from squarewell.analytic import ground_state
from squarewell.cli import main
from squarewell.core import PhysicalParams
from squarewell.formats import wavefunction_to_csv


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_spectrum_rows(capsys):
    status, out, _ = run(capsys, "spectrum", "--n-max", "3", "--output-format", "csv")
    assert status == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["n"]) for r in rows] == [1, 2, 3]
    energies = [float(r["energy"]) for r in rows]
    np.testing.assert_allclose(energies, [np.pi**2 / 2, 2 * np.pi**2, 9 * np.pi**2 / 2], rtol=1e-15)


def test_spectrum_length_scaling(capsys):
    _, base, _ = run(capsys, "spectrum", "--n-max", "4", "--output-format", "json")
    _, wide, _ = run(capsys, "--length", "2", "spectrum", "--n-max", "4", "--output-format", "json")
    np.testing.assert_allclose(
        np.array(json.loads(wide)["energy"]), np.array(json.loads(base)["energy"]) / 4, rtol=1e-15
    )


def test_global_flags_after_subcommand(capsys):
    _, a, _ = run(capsys, "--length", "2", "spectrum", "--output-format", "csv")
    _, b, _ = run(capsys, "spectrum", "--length", "2", "--output-format", "csv")
    assert a == b


def test_spectrum_text_shows_multiples(capsys):
    status, out, _ = run(capsys, "spectrum", "--n-max", "2")
    assert status == 0
    assert "9.869604401" in out and "39.4784176" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--n-max", "0"],
        ["spectrum", "--n-max", "x"],
        ["--mass", "0", "spectrum"],
        ["nonsense"],
        [],
        ["minimize", "--initial", "bogus"],
        ["minimize", "--step-size", "-1"],
        ["check-wirtinger", "--trials", "0"],
        ["--grid-points", "2", "bounds"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    status, _, _ = run(capsys, *argv)
    assert status == 2


def test_minimize_default_report(capsys):
    status, out, _ = run(capsys, "minimize", "--output-format", "json")
    assert status == 0
    report = json.loads(out)
    assert report["converged"] is True
    assert abs(report["gap"]) <= 1e-8 * report["exact_bound"]
    assert report["final_energy"] == pytest.approx(np.pi**2 / 2, rel=1e-8)
    assert report["overlap_with_mode1"] >= 1 - 1e-6


def test_minimize_seeds(capsys, tmp_path):
    t0, t7 = tmp_path / "t0.csv", tmp_path / "t7.csv"
    _, a, _ = run(capsys, "minimize", "--output-format", "json", "--trajectory", str(t0))
    _, b, _ = run(capsys, "minimize", "--seed", "7", "--output-format", "json", "--trajectory", str(t7))
    assert json.loads(a)["final_energy"] == pytest.approx(json.loads(b)["final_energy"], rel=1e-8)
    assert t0.read_text() != t7.read_text()
    assert t0.read_text().startswith("iteration,energy\n0,")


def test_minimize_forced_non_convergence(capsys):
    status, out, _ = run(capsys, "minimize", "--max-iterations", "1", "--output-format", "json")
    assert status == 3
    assert json.loads(out)["converged"] is False


def test_minimize_writes_coefficients_and_accepts_them(capsys, tmp_path):
    coeffs = tmp_path / "c.csv"
    run(capsys, "minimize", "--truncation", "4", "--coefficients", str(coeffs))
    assert coeffs.read_text().startswith("n,re,im\n1,")
    status, out, _ = run(capsys, "minimize", "--initial", f"file:{coeffs}", "--output-format", "json")
    assert status == 0
    assert json.loads(out)["iterations_used"] <= 2


def test_minimize_mode_start(capsys):
    status, out, _ = run(capsys, "minimize", "--initial", "mode:2", "--output-format", "json")
    assert status == 0
    rep = json.loads(out)
    assert rep["overlap_with_mode1"] == 0.0
    assert rep["final_energy"] == pytest.approx(2 * np.pi**2)


def test_minimize_csv_is_trajectory(capsys):
    _, out, _ = run(capsys, "minimize", "--output-format", "csv", "--initial", "mode:1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["iteration"]) for r in rows] == [0, 1]


def test_check_wirtinger_summary(capsys):
    status, out, _ = run(capsys, "check-wirtinger", "--trials", "50", "--output-format", "json")
    assert status == 0
    s = json.loads(out)
    assert s["trials"] == 50
    assert s["coefficient_violations"] == 0 and s["grid_violations"] == 0
    assert s["coefficient_min_margin"] >= 0


def test_check_wirtinger_ground_injection(capsys):
    _, out, _ = run(
        capsys, "check-wirtinger", "--trials", "3", "--include-ground", "--output-format", "csv"
    )
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[-1]["kind"] == "ground"
    assert float(rows[-1]["coefficient_margin"]) == 0.0
    assert abs(float(rows[-1]["grid_margin"])) < 1e-4


def test_check_wirtinger_single_trial_deterministic(capsys):
    _, a, _ = run(capsys, "check-wirtinger", "--trials", "1", "--output-format", "json")
    _, b, _ = run(capsys, "check-wirtinger", "--trials", "1", "--output-format", "json")
    assert a == b


def test_bounds_ground(capsys):
    status, out, _ = run(capsys, "bounds", "ground", "--output-format", "json")
    assert status == 0
    rep = json.loads(out)
    assert rep["heisenberg_bound"] == 0.5
    assert rep["exact_bound"] == pytest.approx(4.934802, abs=1e-6)
    assert rep["bound_ratio"] == pytest.approx(np.pi**2, abs=1e-12)


def test_bounds_mode2(capsys):
    _, out, _ = run(capsys, "bounds", "mode:2", "--output-format", "json")
    assert json.loads(out)["delta_p"] == pytest.approx(2 * np.pi, rel=1e-5)


def test_bounds_csv_roundtrip(capsys):
    _, out, _ = run(capsys, "bounds", "--output-format", "csv")
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert float(row["bound_ratio"]) == pytest.approx(np.pi**2, abs=1e-12)


def test_bounds_file_states(capsys, tmp_path):
    good = tmp_path / "good.csv"
    good.write_text(wavefunction_to_csv(ground_state(PhysicalParams(), 501)))
    status, out, _ = run(capsys, "bounds", f"file:{good}", "--output-format", "json")
    assert status == 0
    assert json.loads(out)["delta_p"] == pytest.approx(np.pi, rel=1e-5)

    bad = tmp_path / "bad.csv"
    bad.write_text("x,re,im\n0,0.5,0\n0.5,1,0\n1,0,0\n")
    status, _, err = run(capsys, "bounds", f"file:{bad}")
    assert status == 4
    assert "boundary condition" in err

    status, _, err = run(capsys, "bounds", f"file:{tmp_path / 'missing.csv'}")
    assert status == 4

    loose = tmp_path / "loose.csv"
    loose.write_text("x,re,im\n0,0,0\n0.25,1,0\n0.5,2,0\n0.75,1,0\n1,0,0\n")
    assert run(capsys, "bounds", f"file:{loose}")[0] == 4
    assert run(capsys, "bounds", f"file:{loose}", "--normalize")[0] == 0


def test_coeffs_command(capsys, tmp_path):
    path = tmp_path / "psi.csv"
    path.write_text(wavefunction_to_csv(ground_state(PhysicalParams(), 1001)))
    status, out, _ = run(capsys, "coeffs", str(path), "--truncation", "3", "--output-format", "csv")
    assert status == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert float(rows[0]["re"]) == pytest.approx(1.0, abs=1e-10)
    _, out, _ = run(capsys, "coeffs", f"file:{path}", "--basis", "exp", "--truncation", "2", "--output-format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["k"]) for r in rows] == [-2, -1, 0, 1, 2]
    assert float(rows[3]["im"]) == pytest.approx(-1.0, abs=1e-10)
    status, out, _ = run(capsys, "coeffs", str(path), "--output-format", "json")
    rep = json.loads(out)
    assert rep["wirtinger_margin"] < 1e-20
    status, out, _ = run(capsys, "coeffs", str(path))
    assert "energy_quadrature" in out


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    status, out, _ = run(capsys, "bounds", "--output-format", "json", "--output", str(target))
    assert status == 0 and out == ""
    assert json.loads(target.read_text())["heisenberg_bound"] == 0.5


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "squarewell", "spectrum", "--n-max", "1", "--output-format", "csv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("n,energy\n1,4.934802200544")
