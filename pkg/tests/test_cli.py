"""End-to-end tests of the rollroller command line (run, sweep, validate, compare)."""

import json

import numpy as np
import pandas as pd
import pytest
import yaml

from rollroller.cli import main
from rollroller.dynamics import State
from rollroller.outputs import read_trajectory_csv
from rollroller.scenarios import ScenarioSpec, SweepGrid, pendulum_baseline


@pytest.fixture
def baseline_out(tmp_path):
    out = tmp_path / "baseline"
    assert main(["--log-level", "WARNING", "run", "--scenario", "baseline", "--t-end", "1", "--out", str(out)]) == 0
    return out


def test_run_writes_trajectory_and_metrics(baseline_out) -> None:
    frame = pd.read_csv(baseline_out / "trajectory.csv")
    assert list(frame.columns) == ["t", "theta", "theta_dot", "gamma", "gamma_dot", "mode", "region", "energy"]
    assert len(frame) == 101
    assert set(frame["mode"]) == {"MM"}
    metrics = json.loads((baseline_out / "metrics.json").read_text())
    assert metrics["scenario"] == "baseline"
    assert len(metrics["run_stamp"]) == 40
    assert "final_theta" in metrics and "settled" in metrics


def test_trajectory_csv_is_lossless(baseline_out) -> None:
    from_disk = read_trajectory_csv(baseline_out / "trajectory.csv")
    fresh = pendulum_baseline(t_end=1.0)
    assert np.array_equal(from_disk.states(), fresh.trajectory.states())
    assert np.array_equal(from_disk.times(), fresh.trajectory.times())


def test_same_inputs_same_stamp(tmp_path, baseline_out) -> None:
    again = tmp_path / "again"
    assert main(["run", "--scenario", "baseline", "--t-end", "1", "--out", str(again), "--emit", "json"]) == 0
    first = json.loads((baseline_out / "metrics.json").read_text())
    second = json.loads((again / "metrics.json").read_text())
    assert first["run_stamp"] == second["run_stamp"]
    assert not (again / "trajectory.csv").exists()


def test_run_spec_file(tmp_path) -> None:
    spec = ScenarioSpec(name="drop", x0=State(0.0, 0.0, -2.0, 0.0), t_end=0.5)
    path = tmp_path / "drop.yaml"
    path.write_text(yaml.safe_dump(spec.to_dict()), encoding="utf-8")
    out = tmp_path / "drop"
    assert main(["run", "--scenario", str(path), "--out", str(out)]) == 0
    metrics = json.loads((out / "metrics.json").read_text())
    assert metrics["scenario"] == "drop"
    assert metrics["run_stamp"] == spec.stamp()


def test_sweep_spec_file(tmp_path, capsys: pytest.CaptureFixture) -> None:
    spec = ScenarioSpec(
        name="rates", x0=State(0.0, 0.0, -2.0, 0.0), t_end=0.5, sweep=SweepGrid("theta_dot0", (0.0, 0.2))
    )
    path = tmp_path / "rates.yaml"
    path.write_text(yaml.safe_dump(spec.to_dict()), encoding="utf-8")
    out = tmp_path / "rates"
    assert main(["sweep", "--scenario", str(path), "--grid", "0.1,0.3,0.5", "--out", str(out)]) == 0
    summary = pd.read_csv(out / "summary.csv")
    assert list(summary["label"]) == ["theta_dot0=0.1", "theta_dot0=0.3", "theta_dot0=0.5"]
    assert "theta_dot0=0.3" in capsys.readouterr().out


def test_multi_run_scenario_writes_primary_trajectory(tmp_path) -> None:
    out = tmp_path / "case4"
    assert main(["run", "--scenario", "case4", "--t-end", "0.5", "--out", str(out), "--emit", "csv"]) == 0
    assert (out / "trajectory.csv").read_bytes() == (out / "trajectory_MM.csv").read_bytes()
    assert (out / "trajectory_GB.csv").exists()


def test_validate_published_parameters(table3_path, capsys: pytest.CaptureFixture) -> None:
    assert main(["validate", "--config", str(table3_path)]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 3
    assert "FAIL" not in out


def test_validate_reports_failing_gate(tmp_path, capsys: pytest.CaptureFixture) -> None:
    path = tmp_path / "heavy.yaml"
    path.write_text("params:\n  m_c: 0.5\n", encoding="utf-8")
    assert main(["validate", "--config", str(path)]) == 1
    assert "FAIL mass-ratio" in capsys.readouterr().out


def test_validate_with_oracle(tmp_path) -> None:
    out = tmp_path / "oracle"
    assert main(["validate", "--oracle", "20", "--out", str(out)]) == 0
    frame = pd.read_csv(out / "backend_diff.csv")
    assert len(frame) == 40
    assert set(frame["mode"]) == {"GB", "MM"}
    summary = json.loads((out / "backend_diff_summary.json").read_text())
    assert summary["n_states"] == 40
    assert summary["derived_max_rel_err"] <= 1e-6


def test_compare_identical_runs(baseline_out, capsys: pytest.CaptureFixture) -> None:
    csv = str(baseline_out / "trajectory.csv")
    assert main(["compare", csv, csv]) == 0
    assert "0.000000 rad" in capsys.readouterr().out


def test_compare_outside_span(baseline_out) -> None:
    csv = str(baseline_out / "trajectory.csv")
    assert main(["compare", csv, csv, "--t-eval", "5"]) == 2


def test_compare_rejects_other_csv(tmp_path) -> None:
    other = tmp_path / "other.csv"
    other.write_text("a,b\n1,2\n", encoding="utf-8")
    assert main(["compare", str(other), str(other)]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--scenario", "no-such-scenario"],
        ["run"],
        ["run", "--scenario", "baseline", "--emit", "csv,pdf"],
        ["sweep", "--scenario", "case1", "--grid", ""],
        ["sweep", "--scenario", "baseline"],
        ["sweep", "--scenario", "case3", "--grid", "1,x"],
    ],
)
def test_usage_errors_exit_2(tmp_path, argv, capsys: pytest.CaptureFixture) -> None:
    assert main(argv + ["--out", str(tmp_path)]) == 2
    assert "error:" in capsys.readouterr().err
