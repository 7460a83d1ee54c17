"""CLI surface: commands, artifacts, exit-status taxonomy, determinism."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from ffcalc.cli import main
from ffcalc import solution_from_csv


def run_cli(args, env=None, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "ffcalc", *args],
        capture_output=True,
        text=True,
        env=env,
        cwd=cwd,
    )


class TestInProcess:
    def test_dim_koch(self, capsys):
        assert main(["dim", "--curve", "koch", "--level", "8"]) == 0
        out = capsys.readouterr().out
        value = float(out.split(":")[1].split("(")[0])
        assert abs(value - math.log(4.0) / math.log(3.0)) < 0.05

    def test_staircase_csv(self, tmp_path, capsys):
        out = tmp_path / "stairs.csv"
        assert main(["staircase", "--curve", "koch", "--level", "3", "--alpha", "1.2", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "u,J"
        assert len(lines) == 4**3 + 2

    def test_curve_export(self, tmp_path):
        out = tmp_path / "curve.csv"
        assert main(["curve", "--curve", "koch", "--level", "2", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "u,x,y" and len(lines) == 18

    def test_integrate_and_differentiate(self, capsys):
        assert main(["integrate", "--curve", "segment", "--level", "10", "--fn", "J"]) == 0
        value = float(capsys.readouterr().out.split(":")[1].split("(")[0])
        assert value == pytest.approx(0.5, abs=1e-5)
        assert main(["differentiate", "--curve", "segment", "--level", "10", "--fn", "J2", "--at", "0.5"]) == 0
        value = float(capsys.readouterr().out.rsplit(":", 1)[1])
        assert value == pytest.approx(1.0, abs=1e-4)

    def test_solve_example1_case2_horizon(self, tmp_path, capsys):
        out = tmp_path / "sol.csv"
        assert main(["solve", "--builtin", "example1", "--case", "II", "--out", str(out)]) == 0
        sol = solution_from_csv(out, case="II")
        cell = sol.us[1] - sol.us[0]
        assert abs(sol.validity_horizon - math.log(2.0)) <= cell
        flags = sol.validity
        assert flags[0] and not flags[-1]  # flips along the way

    def test_csv_reproduces_single_level_band(self, tmp_path):
        # a plotting tool can filter the CSV at one membership level and get
        # the closed-form band; check level r = 0.3 for the shrinking case
        out = tmp_path / "sol.csv"
        assert main(["solve", "--builtin", "example1", "--case", "II", "--out", str(out)]) == 0
        rows = np.array(
            [[float(x) for x in ln.split(",")] for ln in out.read_text().splitlines()[1:]]
        )
        band = rows[rows[:, 2] == 0.3]
        assert band.shape[0] == 257
        J, lo, up = band[:, 1], band[:, 3], band[:, 4]
        valid = band[:, 5] != 0.0
        ref_lo = np.exp(J) - 0.3 + (2 * 0.3 - 2) * np.exp(-J) + 1
        ref_up = 0.3 + np.exp(J) - (2 * 0.3 - 2) * np.exp(-J) - 1
        assert np.allclose(lo[valid], ref_lo[valid], atol=1e-6)
        assert np.allclose(up[valid], ref_up[valid], atol=1e-6)

    def test_solve_example2_kappa_csv(self, tmp_path):
        out = tmp_path / "bvp.csv"
        assert main(["solve", "--builtin", "example2", "--out", str(out), "--r-points", "5"]) == 0
        sol = solution_from_csv(out)
        assert sol.rs.size == 5
        # kappa = 1 column equals the crisp solution at the boundaries
        assert sol.lower[0, -1] == pytest.approx(3.0, abs=1e-9)
        assert sol.lower[-1, -1] == pytest.approx(2.0, abs=1e-9)

    def test_verify_example1_both_cases(self, capsys):
        assert main(["verify", "--builtin", "example1", "--case", "I", "--tol", "1e-6"]) == 0
        assert "VERIFY PASS" in capsys.readouterr().out
        assert main(["verify", "--builtin", "example1", "--case", "II", "--tol", "1e-6"]) == 0

    def test_verify_example2(self, capsys):
        assert main(["verify", "--builtin", "example2", "--tol", "1e-6"]) == 0
        assert "VERIFY PASS" in capsys.readouterr().out

    def test_json_artifacts(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        assert main(["verify", "--builtin", "example1", "--case", "I", "--out", str(report)]) == 0
        payload = json.loads(report.read_text())
        assert payload["passed"] is True and payload["max_error"] < 1e-6
        integ = tmp_path / "integral.json"
        assert main(
            ["integrate", "--curve", "segment", "--level", "8", "--fn", "J", "--out", str(integ)]
        ) == 0
        payload = json.loads(integ.read_text())
        assert payload["value"] == pytest.approx(0.5, abs=1e-4)
        dim = tmp_path / "dim.json"
        assert main(["dim", "--curve", "koch", "--level", "7", "--out", str(dim)]) == 0
        assert abs(json.loads(dim.read_text())["estimate"] - 1.2619) < 0.05

    def test_verify_reports_failure_status(self, capsys):
        # impossible tolerance: solver error is finite, so this must fail
        assert main(["verify", "--builtin", "example1", "--case", "I", "--tol", "1e-18"]) == 3

    def test_solve_from_spec_file(self, tmp_path):
        spec = {
            "curve": {"kind": "polyline", "params": [0, 1], "points": [[0, 0], [1, 0]]},
            "case": "I",
            "rhs": {"kind": "linear", "a": 1.0, "c": {"kind": "triangular", "a": -1, "b": 0, "c": 1}},
            "x0": {"kind": "triangular", "a": 0, "b": 1, "c": 2},
            "span": [0.0, 1.0],
            "r_points": 5,
            "j_steps": 32,
        }
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(spec))
        out = tmp_path / "sol.csv"
        assert main(["solve", "--spec", str(path), "--out", str(out)]) == 0
        assert out.exists()


class TestExitStatus:
    def test_unknown_builtin_is_validation_error(self, capsys):
        assert main(["solve", "--builtin", "example1", "--case", "II", "--r-points", "0"]) == 1

    def test_missing_source(self):
        assert main(["solve"]) == 1

    def test_malformed_json_reports_position(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"rhs": {\n  "kind": }')
        assert main(["solve", "--spec", str(path)]) == 1
        err = capsys.readouterr().err
        assert "line 2" in err and "column" in err

    def test_usage_error_maps_to_one(self, capsys):
        assert main(["solve", "--builtin", "example9"]) == 1

    def test_numeric_failure_maps_to_two(self, tmp_path, capsys):
        # a custom problem whose staircase cannot be built: non-refinable
        # curve asked for dimension estimation
        assert main(["dim", "--curve", "segment", "--level", "2"]) == 1  # too few levels
        spec = {
            "curve": {"kind": "polyline", "params": [0, 1], "points": [[0, 0], [1, 0]]},
            "case": "I",
            "rhs": {"kind": "linear", "a": 40.0, "c": {"kind": "triangular", "a": 0, "b": 0, "c": 0}},
            "x0": {"kind": "triangular", "a": 1e300, "b": 1e300, "c": 1e300},
            "span": [0.0, 1.0],
            "r_points": 3,
            "j_steps": 32,
        }
        path = tmp_path / "diverge.json"
        path.write_text(json.dumps(spec))
        assert main(["solve", "--spec", str(path), "--out", str(tmp_path / "x.csv")]) == 2

    def test_bad_thread_cap(self, monkeypatch):
        monkeypatch.setenv("FFC_THREADS", "many")
        assert main(["dim", "--curve", "koch", "--level", "7"]) == 1


class TestDeterminism:
    def test_identical_csv_across_thread_caps(self, tmp_path, cli_env):
        outputs = []
        for cap in ("1", "8"):
            env = dict(cli_env)
            env["FFC_THREADS"] = cap
            out = tmp_path / f"sol_{cap}.csv"
            proc = run_cli(
                ["solve", "--builtin", "example1", "--case", "II", "--out", str(out)],
                env=env,
                cwd=tmp_path,
            )
            assert proc.returncode == 0, proc.stderr
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_repeat_run_byte_identical(self, tmp_path, cli_env):
        blobs = []
        for k in range(2):
            out = tmp_path / f"rep_{k}.csv"
            proc = run_cli(
                ["solve", "--builtin", "example1", "--case", "I", "--out", str(out)],
                env=cli_env,
                cwd=tmp_path,
            )
            assert proc.returncode == 0, proc.stderr
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]
