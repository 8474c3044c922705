"""Command line contract tests.

Output formats are pinned: CSV with comma separators, LF endings, and 17
significant digits so floats round-trip exactly; JSON with sorted keys.
Exit codes: 0 success, 1 failed verification, 2 invalid input, 3
numerical or simulation failure, 4 file I/O failure.
"""

import json
import math
import subprocess
import sys

import pytest

from casimirlab.cli import main
from casimirlab.closed_form import force_absorbing, force_reflecting
from casimirlab.model import Boundary, ModelParams
from casimirlab.verify import VerifyReport


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def read_csv(path):
    text = path.read_bytes().decode("utf-8")
    assert "\r" not in text
    assert text.endswith("\n")
    lines = text.splitlines()
    return lines[0], [line.split(",") for line in lines[1:]]


class TestForce:
    def test_reflecting_closed_form_json(self, capsys):
        code, out = run_cli(
            capsys, "force", "--mode", "reflecting", "--beta", "1", "--L", "1"
        )
        assert code == 0
        payload = json.loads(out)
        assert set(payload) == {"mode", "beta", "L", "method", "value", "uncertainty"}
        assert payload["mode"] == "reflecting"
        assert payload["method"] == "closed-form"
        assert payload["uncertainty"] is None
        exact = force_reflecting(
            ModelParams(beta=1.0, L=1.0, boundary=Boundary.REFLECTING)
        ).value
        assert payload["value"] == pytest.approx(exact, rel=1e-12)

    def test_flux_limit_agrees_with_closed_form(self, capsys):
        code, out = run_cli(
            capsys,
            "force", "--mode", "absorbing", "--beta", "1", "--L", "1",
            "--method", "flux-limit",
        )
        assert code == 0
        payload = json.loads(out)
        exact = force_absorbing(
            ModelParams(beta=1.0, L=1.0, boundary=Boundary.ABSORBING)
        ).value
        assert payload["value"] == pytest.approx(exact, rel=1e-4)
        assert payload["uncertainty"] > 0

    def test_oracle_method(self, capsys):
        code, out = run_cli(
            capsys,
            "force", "--mode", "reflecting", "--beta", "1", "--L", "1",
            "--method", "oracle",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["method"] == "pde-oracle"
        exact = force_reflecting(
            ModelParams(beta=1.0, L=1.0, boundary=Boundary.REFLECTING)
        ).value
        assert payload["value"] == pytest.approx(exact, rel=1e-6)

    def test_negative_beta_is_invalid_input(self, capsys):
        code, _ = run_cli(
            capsys, "force", "--mode", "reflecting", "--beta", "-1", "--L", "1"
        )
        assert code == 2

    def test_flux_limit_needs_absorbing_mode(self, capsys):
        code, _ = run_cli(
            capsys,
            "force", "--mode", "reflecting", "--beta", "1", "--L", "1",
            "--method", "flux-limit",
        )
        assert code == 2

    def test_unknown_mode_rejected_by_parser(self, capsys):
        code, _ = run_cli(
            capsys, "force", "--mode", "periodic", "--beta", "1", "--L", "1"
        )
        assert code == 2


class TestSweep:
    def test_reflecting_force_is_strictly_decreasing(self, capsys, tmp_path):
        out = tmp_path / "sweep.csv"
        code, _ = run_cli(
            capsys,
            "sweep", "--mode", "reflecting", "--beta", "1",
            "--L-min", "0.1", "--L-max", "5", "--points", "12",
            "--out", str(out),
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == "L,force,method,beta"
        assert len(rows) == 12
        forces = [float(row[1]) for row in rows]
        assert all(a > b for a, b in zip(forces, forces[1:]))
        assert forces[0] > forces[-1]
        assert all(row[2] == "closed-form" for row in rows)

    def test_floats_round_trip_through_the_csv(self, capsys, tmp_path):
        out = tmp_path / "sweep.csv"
        run_cli(
            capsys,
            "sweep", "--mode", "reflecting", "--beta", "1",
            "--L-min", "0.3", "--L-max", "2.7", "--points", "5",
            "--out", str(out),
        )
        _, rows = read_csv(out)
        for row in rows:
            for cell in (row[0], row[1], row[3]):
                assert format(float(cell), ".17g") == cell

    def test_inverted_range_rejected(self, capsys, tmp_path):
        code, _ = run_cli(
            capsys,
            "sweep", "--mode", "reflecting", "--beta", "1",
            "--L-min", "2", "--L-max", "1", "--points", "5",
            "--out", str(tmp_path / "x.csv"),
        )
        assert code == 2

    def test_single_point_rejected(self, capsys, tmp_path):
        code, _ = run_cli(
            capsys,
            "sweep", "--mode", "reflecting", "--beta", "1",
            "--L-min", "1", "--L-max", "2", "--points", "1",
            "--out", str(tmp_path / "x.csv"),
        )
        assert code == 2

    def test_unwritable_output_is_io_failure(self, capsys, tmp_path):
        code, _ = run_cli(
            capsys,
            "sweep", "--mode", "reflecting", "--beta", "1",
            "--L-min", "1", "--L-max", "2", "--points", "3",
            "--out", str(tmp_path / "missing" / "x.csv"),
        )
        assert code == 4


class TestDensity:
    def test_absorbing_profile_vanishes_at_both_walls(self, capsys, tmp_path):
        out = tmp_path / "density.csv"
        code, _ = run_cli(
            capsys,
            "density", "--mode", "absorbing", "--beta", "1", "--L", "1",
            "--grid", "8", "--out", str(out),
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == "x,rho,source"
        table = {float(row[0]): float(row[1]) for row in rows}
        assert table[0.0] == 0.0
        assert table[1.0] == 0.0
        assert all(row[2] == "closed-form" for row in rows)

    def test_outside_rows_approach_the_bulk_density(self, capsys, tmp_path):
        out = tmp_path / "density.csv"
        run_cli(
            capsys,
            "density", "--mode", "absorbing", "--beta", "1", "--L", "1",
            "--grid", "8", "--out", str(out),
        )
        _, rows = read_csv(out)
        farthest = min(rows, key=lambda row: float(row[0]))
        assert float(farthest[1]) == pytest.approx(math.sqrt(0.5), abs=1e-4)

    def test_reflecting_inside_profile_is_symmetric(self, capsys, tmp_path):
        out = tmp_path / "density.csv"
        run_cli(
            capsys,
            "density", "--mode", "reflecting", "--beta", "1", "--L", "2",
            "--grid", "6", "--out", str(out),
        )
        _, rows = read_csv(out)
        inside = [(float(row[0]), float(row[1])) for row in rows if float(row[0]) >= 0]
        values = [rho for _, rho in inside]
        assert values == list(reversed(values))

    def test_grid_of_one_rejected(self, capsys, tmp_path):
        code, _ = run_cli(
            capsys,
            "density", "--mode", "reflecting", "--beta", "1", "--L", "1",
            "--grid", "1", "--out", str(tmp_path / "x.csv"),
        )
        assert code == 2


class TestSimulate:
    BASE = [
        "simulate", "--mode", "reflecting", "--beta", "1", "--L", "1",
        "--eps", "0.1", "--W-out", "6", "--t-sample", "25",
        "--replicas", "8", "--seed", "2024",
    ]

    def test_repeat_runs_are_byte_identical(self, capsys, tmp_path):
        first = tmp_path / "a"
        second = tmp_path / "b"
        code, out1 = run_cli(capsys, *self.BASE, "--out", str(first))
        assert code == 0
        code, out2 = run_cli(capsys, *self.BASE, "--out", str(second))
        assert code == 0
        assert out1 == out2
        assert first.with_suffix(".json").read_bytes() == second.with_suffix(".json").read_bytes()
        assert first.with_suffix(".csv").read_bytes() == second.with_suffix(".csv").read_bytes()

    def test_reflecting_summary_contents(self, capsys, tmp_path):
        out = tmp_path / "run"
        code, _ = run_cli(capsys, *self.BASE, "--out", str(out))
        assert code == 0
        payload = json.loads(out.with_suffix(".json").read_text())
        assert payload["parity_mean"] == 1.0
        assert payload["parity_se"] == 0.0
        assert payload["params"]["eps_eff"] == 0.1
        assert payload["force"]["method"] == "simulation"
        header, rows = read_csv(out.with_suffix(".csv"))
        assert header == "x,rho,se"
        # Bulk bin well outside the wall region.
        bulk = [row for row in rows if -4.0 < float(row[0]) < -2.0]
        row = bulk[len(bulk) // 2]
        assert abs(float(row[1]) - math.sqrt(0.5)) < 3.0 * float(row[2])

    def test_event_budget_overflow_is_simulation_failure(self, capsys, tmp_path):
        code, _ = run_cli(
            capsys, *self.BASE, "--max-events", "1000", "--out", str(tmp_path / "x")
        )
        assert code == 3

    def test_bad_geometry_is_invalid_input(self, capsys, tmp_path):
        argv = list(self.BASE)
        argv[argv.index("--eps") + 1] = "0.4"
        code, _ = run_cli(capsys, *argv, "--out", str(tmp_path / "x"))
        assert code == 2


class TestVerify:
    def test_simulation_suite_report_shape(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
        out = tmp_path / "report.json"
        code, text = run_cli(
            capsys, "verify", "--suite", "simulation", "--seed", "42",
            "--out", str(out),
        )
        assert code == 0
        report = json.loads(text)
        assert report["suite"] == "simulation"
        assert report["overall"] is True
        for check in report["checks"]:
            assert set(check) == {
                "id", "description", "expected", "observed", "tolerance", "passed",
            }
        provenance = report["provenance"]
        assert provenance["seed"] == 42
        assert provenance["timestamp"] == "2023-11-14T22:13:20+00:00"
        assert out.read_text() == text

    def test_fixed_epoch_makes_reports_byte_identical(self, capsys, monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
        args = ("verify", "--suite", "simulation", "--seed", "42")
        _, first = run_cli(capsys, *args)
        _, second = run_cli(capsys, *args)
        assert first == second

    def test_failing_suite_returns_one(self, capsys, monkeypatch):
        import casimirlab.cli as cli_module
        from casimirlab.verify import CheckResult

        def fake_run_suite(suite, seed):
            check = CheckResult(
                id="stub", description="stub", expected=0.0,
                observed=1.0, tolerance=0.0, passed=False,
            )
            return VerifyReport(
                suite=suite, checks=(check,), overall=False, provenance={"seed": seed},
            )

        monkeypatch.setattr(cli_module, "run_suite", fake_run_suite)
        code, text = run_cli(capsys, "verify", "--suite", "closed-form")
        assert code == 1
        assert json.loads(text)["overall"] is False

    def test_unknown_suite_rejected(self, capsys):
        code, _ = run_cli(capsys, "verify", "--suite", "bogus")
        assert code == 2


class TestMainContract:
    def test_help_returns_zero(self, capsys):
        assert main(["--help"]) == 0
        capsys.readouterr()

    def test_missing_command_rejected(self, capsys):
        assert main([]) == 2
        capsys.readouterr()

    def test_unknown_command_rejected(self, capsys):
        assert main(["frobnicate"]) == 2
        capsys.readouterr()

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "casimirlab.cli",
             "force", "--mode", "reflecting", "--beta", "1", "--L", "0.5"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["value"] > 0
