"""Tests for hydraulic force balance, feasibility and the core torque."""

from dataclasses import replace

import pytest

from rollroller.errors import ActuationInfeasibleError, InvalidGeometryError, InvalidParameterError
from rollroller.hydraulics import (
    HydraulicParams,
    actuation_feasible,
    core_torque,
    max_required_force,
    torque_command,
    transmitted_force,
)
from rollroller.model.params import RobotParams


def _with_hydraulics(params: RobotParams, **changes) -> RobotParams:
    h = replace(params.hydraulics, **changes)
    return RobotParams.build(params.geometry, params.masses, params.friction, h, g=params.g)


# ---- forces ----


def test_transmitted_force_closed_form(params: RobotParams) -> None:
    """r_c=0.02, D1=0.02, D2=0.01: 56/3 N per newton of actuator force."""
    h = params.hydraulics
    assert transmitted_force(h) == pytest.approx(56.0 / 3.0, rel=1e-12)
    assert transmitted_force(replace(h, F_LA=2.5)) == pytest.approx(140.0 / 3.0, rel=1e-12)


def test_max_required_force_adds_pressure_load() -> None:
    h = HydraulicParams(m_lc=0.3, m_b=0.05, delta_P=100.0, A_c=1e-3, F_LA=1.0, D1=0.02, D2=0.01)
    assert max_required_force(h, 9.8) == pytest.approx(0.25 * 9.8 + 0.1, rel=1e-12)


def test_feasibility_is_strict(params: RobotParams) -> None:
    """Equal transmitted and required force is not enough."""
    h = replace(params.hydraulics, m_lc=1.0, m_b=0.0, delta_P=0.0)
    g_equal = transmitted_force(h)
    assert max_required_force(h, g_equal) == transmitted_force(h)
    assert not actuation_feasible(h, g_equal)
    assert actuation_feasible(h, g_equal * 0.999)


def test_cylinder_geometry_checked() -> None:
    h = HydraulicParams(m_lc=0.25, m_b=0.0, delta_P=0.0, A_c=1e-3, F_LA=1.0, D1=0.01, D2=0.01)
    with pytest.raises(InvalidGeometryError):
        transmitted_force(h)
    with pytest.raises(InvalidParameterError):
        transmitted_force(h)


def test_circuit_count_validated() -> None:
    with pytest.raises(InvalidParameterError) as exc:
        HydraulicParams(m_lc=0.25, m_b=0.0, delta_P=0.0, A_c=1e-3, F_LA=1.0, D1=0.02, D2=0.01, s=5)
    assert exc.value.parameter == "s"


# ---- torque ----


def test_torque_command_hits_target(params: RobotParams) -> None:
    """The forward-run torque is reached by throttling the default actuator."""
    assert torque_command(params, -0.075) == pytest.approx(-0.075, rel=1e-12)
    assert torque_command(params, 0.0) == 0.0


def test_full_throttle_torque(params: RobotParams) -> None:
    expected = params.geometry.b * params.hydraulics.s * transmitted_force(params.hydraulics)
    assert core_torque(params, 1.0) == pytest.approx(expected, rel=1e-12)
    assert core_torque(params, -1.0) == pytest.approx(-expected, rel=1e-12)
    with pytest.raises(InvalidParameterError):
        core_torque(params, 1.5)


def test_infeasible_actuator_refuses_torque(params: RobotParams) -> None:
    """A weak actuator cannot lift the core; zero torque is still fine."""
    weak = _with_hydraulics(params, F_LA=0.05)
    assert not actuation_feasible(weak.hydraulics, weak.g)
    with pytest.raises(ActuationInfeasibleError) as exc:
        core_torque(weak, 1.0)
    assert exc.value.transmitted < exc.value.required
    assert core_torque(weak, 0.0) == 0.0


def test_torque_command_beyond_capacity(params: RobotParams) -> None:
    capacity = params.geometry.b * transmitted_force(params.hydraulics)
    with pytest.raises(ActuationInfeasibleError):
        torque_command(params, capacity * 1.01)
