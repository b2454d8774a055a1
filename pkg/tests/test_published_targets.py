"""
Reproduction of the published case-study numbers with the default parameter set.

These integrate the full 10-15 s horizons (deselect with -m "not slow"). Targets the model
cannot reach are marked xfail with the measured or predicted value in the reason; the
derivations are in DESIGN.md under "Published targets".
"""

import math

import numpy as np
import pytest

from rollroller.integrator.trajectory import EventKind
from rollroller.scenarios import mass_ratio_sweep, run_case1, run_case3, run_case4, run_forward_locomotion

PI = math.pi

pytestmark = pytest.mark.slow

# From rest, with no torque, theta settles at -zeta_gamma (gamma0 + pi) / (zeta_theta + zeta_gamma).
REST_FROM_QUARTER_TURN = "sphere momentum balance puts the rest angle at -0.0748 rad for gamma0=-pi/2"
CASE3_THRESHOLD = "negative-branch reversal sits at |gamma_dot0| = 2.34 rad/s (p0 = -C gamma_dot0 against zeta_gamma pi/4)"
CASE4_OFFSET = "rest offset |theta_MM| - |theta_GB| is -0.0029 rad: the two starts differ only in p0"
SWEEP_OVERSHOOT = "final theta is 0.075 rad for every m*; the core swing alone exceeds 5% of so small a step"
FORWARD_SHAPE = "hybrid forward-run shape depends on sample-time switching; see DESIGN.md"


@pytest.fixture(scope="module")
def case1_runs():
    return {round(r.spec.x0.gamma, 6): r for r in run_case1()}


@pytest.fixture(scope="module")
def case4_report():
    return run_case4()


@pytest.fixture(scope="module")
def forward_report():
    return run_forward_locomotion()


def test_case1_backward_starts(case1_runs) -> None:
    for g0 in (-2 * PI / 3, -3 * PI / 4, -5 * PI / 6):
        assert case1_runs[round(g0, 6)].metrics.final_theta < 0, "gamma0=%.4f must roll backward" % g0
    assert abs(case1_runs[round(-PI, 6)].metrics.final_theta) < 1e-6


@pytest.mark.xfail(reason=REST_FROM_QUARTER_TURN, strict=True)
def test_case1_quarter_turn_rolls_forward(case1_runs) -> None:
    assert case1_runs[round(-PI / 2, 6)].metrics.final_theta > 0


@pytest.fixture(scope="module")
def case3_report():
    return run_case3()


def test_case3_positive_branch(case3_report) -> None:
    assert case3_report.positive_threshold is None or case3_report.positive_threshold >= 0.8 * 2 * PI


@pytest.mark.xfail(reason=CASE3_THRESHOLD, strict=True)
def test_case3_negative_threshold(case3_report) -> None:
    assert case3_report.negative_threshold == pytest.approx(2 * PI, rel=0.20)
    assert all(t.within for t in case3_report.targets)


@pytest.mark.xfail(reason=CASE4_OFFSET, strict=True)
def test_case4_offset(case4_report) -> None:
    assert case4_report.offset == pytest.approx(4.82, rel=0.25)


def test_case4_gb_inequality(case4_report) -> None:
    assert case4_report.gb_inequality_holds


@pytest.mark.xfail(reason="GB core damping ratio is about 0.64; the first core swing may still pull theta_dot below -0.05")
def test_case4_gb_velocity(case4_report) -> None:
    assert case4_report.gb.metrics.min_theta_dot >= -0.05, "negative sphere velocity should vanish in GB"


@pytest.fixture(scope="module")
def sweep_report():
    return mass_ratio_sweep()


@pytest.mark.xfail(reason="boundaries follow the overshoot classification: " + SWEEP_OVERSHOOT)
def test_mass_ratio_boundaries(sweep_report) -> None:
    assert len(sweep_report.to_frame()) == 10
    assert sweep_report.lower_boundary is not None and 0.08 <= sweep_report.lower_boundary <= 0.12
    assert sweep_report.upper_boundary is not None and 0.28 <= sweep_report.upper_boundary <= 0.35


@pytest.mark.xfail(reason=SWEEP_OVERSHOOT)
def test_mass_ratio_reference_step(sweep_report) -> None:
    (reference,) = [p for p in sweep_report.points if math.isclose(p.m_star, 0.25)]
    assert reference.run.metrics.overshoot == pytest.approx(0.05, rel=0.30)
    assert reference.run.metrics.settling_time == pytest.approx(5.2, rel=0.30)


def test_mass_sweep_rest_angle_is_independent_of_mass(sweep_report) -> None:
    """Released at -3pi/2 the core settles at -pi: theta = zeta_gamma (pi/2) / (zeta_theta + zeta_gamma)."""
    for point in sweep_report.points:
        p = point.run.spec.params.friction
        expected = p.zeta_gamma_MM * (PI / 2) / (p.zeta_theta + p.zeta_gamma_MM)
        assert point.run.metrics.final_theta == pytest.approx(expected, abs=2e-3)


def test_forward_run_leaves_the_gravity_breaker(forward_report) -> None:
    assert forward_report.run.metrics.jump_events, "forward run must leave the gravity breaker at least once"


@pytest.mark.xfail(reason=FORWARD_SHAPE)
def test_forward_offset(forward_report) -> None:
    assert forward_report.offset == pytest.approx(7.713, rel=0.25)


@pytest.mark.xfail(reason=FORWARD_SHAPE)
def test_forward_jump_states(forward_report) -> None:
    jumps = forward_report.run.metrics.jump_events
    assert jumps[0].gamma == pytest.approx(-6.2304, rel=0.15)
    assert jumps[0].gamma_dot == pytest.approx(-69.8284, rel=0.15)
    assert len(jumps) >= 2
    assert [jumps[1].theta, jumps[1].theta_dot, jumps[1].gamma, jumps[1].gamma_dot] == pytest.approx(
        [3.2648, 9.9830, -34.7005, -83.9019], rel=0.15
    )


@pytest.mark.xfail(reason=FORWARD_SHAPE)
def test_forward_theta_monotone_after_first_jump(forward_report) -> None:
    traj = forward_report.run.trajectory
    first_exit = next(e.t for e in traj.events if e.kind is EventKind.GB_EXIT)
    theta = traj.column("theta")[traj.times() >= first_exit]
    assert np.all(np.diff(theta) >= -1e-3), "theta must not swing back after the first jump"


@pytest.mark.xfail(reason="the baseline settles to a steady roll at 0.357 rad/s; theta_dot swings about it, not about zero")
def test_baseline_theta_dot_changes_sign(forward_report) -> None:
    assert forward_report.baseline.metrics.theta_dot_sign_changes >= 3
