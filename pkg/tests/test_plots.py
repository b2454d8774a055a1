"""Tests for rollroller.viz (SVG paths and panel set)."""

from pathlib import Path

import pytest

pytest.importorskip("matplotlib")

from rollroller.dynamics import PathMode, State  # noqa: E402
from rollroller.integrator.trajectory import EventKind, Region, Sample, Trajectory, TrajectoryEvent  # noqa: E402
from rollroller.viz import render_series, render_trajectory_plots  # noqa: E402


@pytest.fixture
def traj():
    """Three samples with one GB exit in the middle."""
    states = [State(0.0, 0.0, -1.0, 0.0), State(0.1, 0.2, -1.5, -3.0), State(0.3, 0.2, -2.0, -1.0)]
    samples = [Sample(t=0.1 * i, state=s, mode=PathMode.MM, region=Region.ALPHA) for i, s in enumerate(states)]
    return Trajectory(samples=samples, events=[TrajectoryEvent(t=0.1, kind=EventKind.GB_EXIT, state=states[1])])


def test_render_trajectory_plots_writes_three_svgs(traj, tmp_path):
    paths = render_trajectory_plots({"run": traj}, tmp_path, title="run")
    assert [Path(p).name for p in paths] == ["theta.svg", "theta_dot.svg", "gamma_dot.svg"]
    for p in paths:
        assert Path(p).read_text().lstrip().startswith("<?xml")


def test_render_series_overlays_runs(traj, tmp_path):
    path = render_series({"a": traj, "b": traj}, "gamma", str(tmp_path / "nested" / "gamma.svg"))
    assert Path(path).exists()
