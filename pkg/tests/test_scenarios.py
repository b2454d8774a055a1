"""Tests for scenario specs, the hybrid simulation loop and the scenario library plumbing."""

import math
from dataclasses import replace

import numpy as np
import pytest
import yaml

from rollroller.config import DEFAULT_CONFIG, SweepConfig, load_config
from rollroller.controller import ControllerConfig, gb_crossing_condition, junction_half_width
from rollroller.dynamics import PathMode, State, effective_geometry, sphere_momentum, state_derivative
from rollroller.errors import ConfigError, InvalidParameterError
from rollroller.integrator import IntegratorConfig, integrate
from rollroller.integrator.trajectory import EventKind
from rollroller.scenarios import (
    BUILTIN_SCENARIOS,
    ScenarioSpec,
    SweepGrid,
    mass_ratio_sweep,
    pendulum_baseline,
    run_case1,
    run_case2,
    run_case3,
    run_case4,
    run_custom,
    run_forward_locomotion,
    run_spec,
    simulate,
    spec_from_config,
)
from rollroller.scenarios.library import ABNORMAL, SETTLED, _branch_threshold
from rollroller.utils.math import sign_changes

PI = math.pi
SERIAL = replace(DEFAULT_CONFIG, sweep=SweepConfig(workers=1))


@pytest.fixture
def short_spec() -> ScenarioSpec:
    return ScenarioSpec(name="short", x0=State(0.0, 0.0, -3 * PI / 4, 0.0), t_end=2.0)


# ---- specs ----


def test_spec_validation() -> None:
    with pytest.raises(InvalidParameterError):
        ScenarioSpec(name="bad", x0=State(0.0, 0.0, 0.0, 0.0), t_end=0.0)
    with pytest.raises(ConfigError):
        SweepGrid("theta0", ())


def test_with_point() -> None:
    spec = ScenarioSpec(name="p", x0=State(0.0, 0.0, -1.0, 0.0))
    assert spec.with_point("gamma_dot0", 3.0).x0.gamma_dot == 3.0
    assert spec.with_point("m_star", 0.2).params.masses.m_c == pytest.approx(0.2)
    assert spec.with_point("torque", -0.01).torque == -0.01
    assert spec.with_point("zeta_theta", 0.5).params.friction.zeta_theta == 0.5
    with pytest.raises(InvalidParameterError):
        spec.with_point("no_such_param", 1.0)


def test_points_follow_grid_order() -> None:
    spec = ScenarioSpec(name="p", x0=State(0.0, 0.0, -1.0, 0.0), sweep=SweepGrid("theta0", (0.3, 0.1, 0.2)))
    assert [p.x0.theta for p in spec.points()] == [0.3, 0.1, 0.2]
    assert all(p.sweep is None for p in spec.points())


def test_spec_dict_round_trip() -> None:
    spec = ScenarioSpec(
        name="rt",
        x0=State(0.1, 0.0, -1.0, 0.5),
        torque=0.01,
        mode0=PathMode.GB,
        t_end=2.0,
        controller=ControllerConfig(enabled=True, strict_paper_constraints=True),
    )
    back = ScenarioSpec.from_dict(spec.to_dict())
    assert back == spec
    assert back.stamp() == spec.stamp()


def test_spec_yaml_round_trip(tmp_path, short_spec: ScenarioSpec) -> None:
    path = tmp_path / "spec.yaml"
    path.write_text(yaml.safe_dump(short_spec.to_dict()), encoding="utf-8")
    assert spec_from_config(load_config(path)) == short_spec


def test_stamp_changes_with_content(short_spec: ScenarioSpec) -> None:
    assert short_spec.stamp() != replace(short_spec, torque=0.001).stamp()
    assert len(short_spec.stamp()) == 40


def test_scenario_block_errors() -> None:
    with pytest.raises(ConfigError) as exc:
        spec_from_config(replace(DEFAULT_CONFIG, scenario={"x0": [0, 0, 0]}))
    assert exc.value.key == "scenario.x0"
    with pytest.raises(ConfigError) as exc:
        spec_from_config(replace(DEFAULT_CONFIG, scenario={"x0": [0, 0, 0, 0], "colour": 1}))
    assert exc.value.key == "scenario.colour"
    with pytest.raises(ConfigError):
        spec_from_config(replace(DEFAULT_CONFIG, scenario={"x0": [0, 0, 0, 0], "mode0": "XX"}))


# ---- simulation ----


def test_simulation_is_deterministic(short_spec: ScenarioSpec) -> None:
    a = simulate(short_spec)
    b = simulate(short_spec)
    assert np.array_equal(a.states(), b.states())


def test_disabled_controller_matches_plain_integration(short_spec: ScenarioSpec) -> None:
    params = short_spec.params
    plain = integrate(
        lambda t, x: state_derivative(x, params, PathMode.MM, 0.0),
        short_spec.x0,
        short_spec.integrator_config(),
    )
    hybrid = simulate(short_spec)
    assert np.array_equal(plain.states(), hybrid.states())
    assert hybrid.events == []
    assert {s.mode for s in hybrid.samples} == {PathMode.MM}


def test_sample_grid(short_spec: ScenarioSpec) -> None:
    traj = simulate(short_spec)
    assert len(traj) == 201
    assert traj.span == (0.0, pytest.approx(2.0))


def test_run_energy_and_direction(short_spec: ScenarioSpec) -> None:
    run = run_spec(short_spec)
    energies = [run.energy(s) for s in run.trajectory.samples]
    assert energies[-1] <= energies[0] + 1e-9
    assert run.direction() in ("forward", "backward", "still")
    assert run.summary_row()["classification"] == run.direction()


# ---- library ----


def test_builtin_registry() -> None:
    assert set(BUILTIN_SCENARIOS) == {"case1", "case2", "case3", "case4", "mass-sweep", "forward", "baseline"}


def test_case1_core_at_the_bottom_stays_put() -> None:
    (run,) = run_case1([-PI], config=SERIAL, t_end=2.0)
    assert abs(run.metrics.final_theta) < 1e-6
    assert run.spec.params.friction.zeta_gamma_MM == 0.01


def test_case4_degenerate_pipes_give_zero_offset() -> None:
    """With a == b both pipes are the same circle."""
    circular = replace(SERIAL, params=SERIAL.params.with_overrides(a=SERIAL.params.geometry.b))
    report = run_case4(config=circular, t_end=2.0)
    assert report.offset == 0.0
    assert np.array_equal(report.mm.trajectory.states(), report.gb.trajectory.states())
    assert report.mm.spec.mode0 is PathMode.MM
    assert report.gb.spec.mode0 is PathMode.GB


def test_baseline_never_switches() -> None:
    run = pendulum_baseline(config=SERIAL, t_end=1.0)
    assert run.trajectory.events == []
    assert all(s.mode is PathMode.MM for s in run.trajectory.samples)
    assert run.metrics.jump_events == []
    assert run.spec.torque != 0.0


def test_forward_run_event_plumbing() -> None:
    report = run_forward_locomotion(config=SERIAL, t_end=3.0)
    traj = report.run.trajectory
    times = set(traj.times().tolist())
    assert all(e.t in times for e in traj.events)
    exits = [e for e in traj.events if e.kind is EventKind.GB_EXIT]
    assert [j.t for j in report.run.metrics.jump_events] == [e.t for e in exits]
    entries = [e for e in traj.events if e.kind is EventKind.GB_ENTRY]
    assert len(entries) >= len(exits)
    assert report.offset == pytest.approx(report.run.metrics.offset_vs_baseline)
    assert [t.name for t in report.targets] == [
        "forward_offset",
        "first_jump_gamma",
        "first_jump_gamma_dot",
        "second_jump_theta",
        "second_jump_theta_dot",
        "second_jump_gamma",
        "second_jump_gamma_dot",
    ]
    cfg = report.run.spec.controller
    assert all(not gb_crossing_condition(e.state, cfg) for e in exits)


def test_branch_threshold_on_grid() -> None:
    never = lambda v: 1.0  # noqa: E731
    assert _branch_threshold([1.0, 2.0, 3.0], [1.0, -1.0, -1.0], 1.0, never, False) == (2.0, True)
    assert _branch_threshold([1.0, 2.0, 3.0], [-1.0, 1.0, -1.0], 1.0, never, False) == (1.0, False)
    assert _branch_threshold([1.0, 2.0], [1.0, 1.0], 1.0, never, True) == (None, True)


def test_branch_threshold_refined() -> None:
    threshold, monotone = _branch_threshold(
        [1.0, 2.0, 3.0], [0.5, -0.5, -1.5], 1.0, lambda v: 1.5 - v, True
    )
    assert threshold == pytest.approx(1.5, abs=1e-3)
    assert monotone


def test_mass_sweep_plumbing() -> None:
    report = mass_ratio_sweep([0.1, 0.25], config=SERIAL, t_end=3.0)
    assert [p.m_star for p in report.points] == [0.1, 0.25]
    assert {p.classification for p in report.points} <= {SETTLED, ABNORMAL}
    assert report.points[0].run.spec.params.masses.m_c == pytest.approx(0.1)
    assert [t.name for t in report.points[1].run.metrics.targets] == ["sweep_overshoot", "sweep_settling_time"]
    frame = report.to_frame()
    assert list(frame["m_star"]) == [0.1, 0.25]
    assert {"ripple", "classification", "final_theta"} <= set(frame.columns)


def test_empty_grids_are_rejected() -> None:
    with pytest.raises(ConfigError) as exc:
        mass_ratio_sweep([], config=SERIAL)
    assert exc.value.key == "sweep.grid"
    with pytest.raises(ConfigError):
        run_case1([], config=SERIAL)


def test_custom_sweep() -> None:
    spec = ScenarioSpec(
        name="custom",
        x0=State(0.0, 0.0, -3 * PI / 4, 0.0),
        t_end=0.5,
        sweep=SweepGrid("theta_dot0", (0.0, 0.5)),
    )
    outcome = run_custom(spec)
    assert list(outcome.runs) == ["theta_dot0=0", "theta_dot0=0.5"]
    assert len(outcome.summary) == 2


# ---- rest positions from the sphere momentum ----
#
# Between a start and a rest with no torque, theta moves by (p0 + zeta_gamma dphi) / (zeta_theta + zeta_gamma),
# where p0 is the sphere momentum at the start and the core comes to rest at the bottom, phi = -pi.


def _predicted_rest_theta(spec: ScenarioSpec) -> float:
    p = spec.params
    zeta_gamma = effective_geometry(p, spec.mode0).zeta_gamma_eff
    p0 = sphere_momentum(spec.x0, p, spec.mode0, spec.dynamics)
    return spec.x0.theta + (p0 + zeta_gamma * (-PI - spec.x0.phi)) / (p.friction.zeta_theta + zeta_gamma)


def test_case2_sphere_keeps_its_initial_direction() -> None:
    report = run_case2([-PI / 2, PI / 2, PI], config=SERIAL, t_end=8.0)
    finals = {r.spec.x0.theta_dot: r.metrics.final_theta for r in report.runs}
    assert finals[PI / 2] > 0 and finals[PI] > 0
    assert finals[-PI / 2] < 0
    assert finals[PI] > finals[PI / 2]
    for run in report.runs:
        assert run.metrics.final_theta == pytest.approx(_predicted_rest_theta(run.spec), abs=2e-3)
    assert report.slope is not None


def test_case3_only_the_negative_branch_reverses() -> None:
    """Positive core rates push the sphere further back; fast enough negative rates turn it forward."""
    report = run_case3([-PI, -PI / 2, PI / 2, PI], refine=False, config=SERIAL, t_end=8.0)
    finals = {r.spec.x0.gamma_dot: r.metrics.final_theta for r in report.runs}
    assert finals[0.0] < 0
    assert finals[PI / 2] < finals[0.0] and finals[PI] < finals[PI / 2]
    assert finals[-PI / 2] < 0 < finals[-PI]
    assert report.negative_threshold == pytest.approx(PI)
    assert report.positive_threshold is None
    assert report.monotone
    for run in report.runs:
        assert run.metrics.final_theta == pytest.approx(_predicted_rest_theta(run.spec), abs=2e-3)


def test_case4_rest_gaps() -> None:
    """The gravity breaker leaves the sphere farther back than the momentum maker from the same start."""
    report = run_case4(config=SERIAL, t_end=6.0)
    assert report.gb_inequality_holds
    spec = report.mm.spec
    p = spec.params
    zeta = p.friction.zeta_theta + p.friction.zeta_gamma_MM
    gap = (
        sphere_momentum(spec.x0, p, PathMode.MM, spec.dynamics) - sphere_momentum(spec.x0, p, PathMode.GB, spec.dynamics)
    ) / zeta
    assert gap > 0
    assert report.rest_gap_gb - report.rest_gap_mm == pytest.approx(gap, abs=2e-4)
    assert report.offset == pytest.approx(-gap, abs=2e-4)
    assert report.mm.metrics.final_theta == pytest.approx(_predicted_rest_theta(spec), abs=2e-4)


def test_baseline_swings_about_its_rolling_rate() -> None:
    """The pendulum drive settles to theta_dot = -tau / (zeta_theta + zeta_gamma) after swinging across it."""
    run = pendulum_baseline(config=SERIAL, t_end=8.0)
    p = run.spec.params
    drift = -run.spec.torque / (p.friction.zeta_theta + p.friction.zeta_gamma_MM)
    assert drift > 0
    theta_dot = run.trajectory.column("theta_dot")
    assert sign_changes(theta_dot - drift, tol=1e-3) >= 3
    assert theta_dot[-1] == pytest.approx(drift, rel=0.05)


# ---- gravity-breaker passes ----


def test_gb_passes_run_junction_to_junction() -> None:
    """A fast core leaves the gravity breaker once per traversal, never straight after entering."""
    spec = ScenarioSpec(
        name="spin",
        x0=State(0.0, 0.0, 0.5, 150.0),
        controller=ControllerConfig(enabled=True),
        t_end=0.1,
        integrator=IntegratorConfig(sample_dt=0.002, max_step=0.002),
    )
    traj = simulate(spec)
    passes = traj.gb_passes()
    assert passes
    gap = PI - 2 * junction_half_width(spec.controller)
    for entry, exit_ in passes:
        assert not gb_crossing_condition(exit_.state, spec.controller)
        assert abs(exit_.state.gamma - entry.state.gamma) >= gap
    gamma = traj.column("gamma")
    assert np.all(np.diff(gamma) > 0)
    assert len(traj.jump_events()) <= (gamma[-1] - gamma[0]) / gap + 1
