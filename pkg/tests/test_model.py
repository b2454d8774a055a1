"""Tests for robot parameters, derived inertias and the mass-ratio gates."""

import logging

import pytest

from rollroller.errors import InvalidParameterError
from rollroller.model.params import (
    Geometry,
    Inertias,
    Masses,
    RobotParams,
    derive_inertias,
    reconcile_inertias,
    table3_params,
    tt_core_mass_bounds,
    tt_mass_valid,
    validate_mass_ratio,
)


# ---- inertias ----


def test_derived_inertias_match_formulas(params: RobotParams) -> None:
    """Shell and core inertias follow the thin-shell and solid-sphere formulas."""
    i = params.inertias
    assert i.I_s == pytest.approx(2.0 / 3.0 * 1.0 * 0.145**2, rel=1e-12)
    assert i.I_c_MM == pytest.approx(0.4 * 0.25 * 0.131**2, rel=1e-12)
    assert i.I_c_GB == pytest.approx(0.4 * 0.25 * 0.088**2, rel=1e-12)
    assert i.I_c_GB == pytest.approx(7.744e-4, rel=1e-12)


def test_table3_warns_about_printed_core_inertia(caplog: pytest.LogCaptureFixture) -> None:
    """The printed I_c_MM disagrees with the formula; a warning names it and the derived value wins."""
    with caplog.at_level(logging.WARNING, logger="rollroller.model.params"):
        p = table3_params()
    assert any("I_c_MM" in r.getMessage() for r in caplog.records)
    assert not any("I_c_GB" in r.getMessage() for r in caplog.records)
    assert p.inertias.I_c_MM == pytest.approx(0.4 * 0.25 * 0.131**2, rel=1e-12)


def test_reconcile_inertias_returns_diverging_names() -> None:
    derived = Inertias(I_s=1.0, I_c_MM=2.0, I_c_GB=3.0)
    assert reconcile_inertias(derived, {"I_s": 1.005, "I_c_MM": 2.5}) == ["I_c_MM"]
    assert reconcile_inertias(derived, None) == []
    with pytest.raises(InvalidParameterError):
        reconcile_inertias(derived, {"I_x": 1.0})


def test_inconsistent_inertias_rejected(params: RobotParams) -> None:
    """RobotParams refuses inertias that do not follow from geometry and masses."""
    wrong = Inertias(I_s=params.inertias.I_s, I_c_MM=0.0402, I_c_GB=params.inertias.I_c_GB)
    with pytest.raises(InvalidParameterError) as exc:
        RobotParams(params.geometry, params.masses, wrong, params.friction, params.hydraulics, params.g)
    assert exc.value.parameter == "I_c_MM"


# ---- mass ratio gates ----


def test_mass_ratio_gate_is_half_open() -> None:
    """1/10 is admissible, 1/3 is not."""
    assert validate_mass_ratio(0.25, 1.0)
    assert validate_mass_ratio(0.1, 1.0)
    assert not validate_mass_ratio(1.0 / 3.0, 1.0)
    assert not validate_mass_ratio(0.05, 1.0)
    with pytest.raises(InvalidParameterError):
        validate_mass_ratio(0.0, 1.0)


def test_tt_core_mass_bounds() -> None:
    lo, hi = tt_core_mass_bounds(1.0, 0.01)
    assert lo == pytest.approx(0.11)
    assert hi == pytest.approx(1.0 / 3.0 + 0.01)
    with pytest.raises(InvalidParameterError):
        tt_core_mass_bounds(1.0, -0.01)


def test_tt_mass_valid_for_published_set(params: RobotParams) -> None:
    assert tt_mass_valid(params.masses)
    assert not tt_mass_valid(Masses(M_s=1.0, m_c=0.25, delta=0.01, m_c_TT=0.5))


# ---- construction ----


def test_geometry_requires_ordered_axes() -> None:
    with pytest.raises(InvalidParameterError):
        Geometry(R=0.145, a=0.14, b=0.131, r_c=0.02)
    with pytest.raises(InvalidParameterError):
        Geometry(R=0.145, a=0.045, b=0.131, r_c=0.05)
    assert Geometry(R=0.145, a=0.131, b=0.131, r_c=0.02).is_circular


def test_masses_reject_non_positive() -> None:
    with pytest.raises(InvalidParameterError):
        Masses(M_s=0.0, m_c=0.25)
    with pytest.raises(InvalidParameterError):
        Masses(M_s=1.0, m_c=0.25, delta=-1.0)


def test_with_mass_ratio_keeps_hydraulics_in_step(params: RobotParams) -> None:
    """Changing m_c re-derives inertias and the hydraulic apparent mass."""
    p = params.with_mass_ratio(0.2)
    assert p.masses.m_c == pytest.approx(0.2)
    assert p.masses.m_star == pytest.approx(0.2)
    assert p.hydraulics.apparent_mass == pytest.approx(0.2)
    assert p.inertias == derive_inertias(p.geometry, p.masses)


def test_with_overrides_unknown_parameter(params: RobotParams) -> None:
    with pytest.raises(InvalidParameterError) as exc:
        params.with_overrides(zeta_thta=0.1)
    assert exc.value.parameter == "zeta_thta"


def test_with_overrides_core_radius_updates_area(params: RobotParams) -> None:
    p = params.with_overrides(r_c=0.03)
    assert p.hydraulics.r_c == pytest.approx(0.03, rel=1e-12)
