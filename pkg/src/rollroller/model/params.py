"""
Physical parameters of the robot: geometry, masses, inertias, friction and hydraulics.

RobotParams is the single immutable source of every symbol the dynamics use. Inertias
are always derived from geometry and masses; user-supplied inertias are only compared
against the derived ones and a warning is logged when they disagree.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, fields, replace
from typing import Mapping

from rollroller.errors import InvalidParameterError
from rollroller.hydraulics.params import HydraulicParams

logger = logging.getLogger(__name__)

MASS_RATIO_LOWER = 1.0 / 10.0
MASS_RATIO_UPPER = 1.0 / 3.0
INERTIA_DIVERGENCE_WARN = 0.01
INERTIA_CONSISTENCY_RTOL = 1e-12

# Published values of the parameter table; I_c_MM there does not follow from the inertia formulas.
TABLE3 = {
    "g": 9.8,
    "M_s": 1.0,
    "m_c": 0.25,
    "R": 0.145,
    "a": 0.045,
    "b": 0.131,
    "r_c": 0.02,
    "zeta_theta": 0.2,
    "zeta_gamma_MM": 0.01,
    "zeta_gamma_GB": 0.01,
    "delta": 0.01,
    "m_c_TT": 0.26,
}
TABLE3_PRINTED_INERTIAS = {"I_s": 0.0140, "I_c_MM": 0.0402, "I_c_GB": 7.7440e-4}


@dataclass(frozen=True)
class Geometry:
    """Sphere radius R, GB semi-axes a <= b (b is also the MM radius) and core radius r_c, all in m."""

    R: float
    a: float
    b: float
    r_c: float

    def __post_init__(self) -> None:
        if not (0 < self.a <= self.b < self.R):
            raise InvalidParameterError(
                "geometry requires 0 < a <= b < R (got a=%r, b=%r, R=%r)" % (self.a, self.b, self.R),
                parameter="a",
                value=self.a,
            )
        if not (0 < self.r_c < self.a):
            raise InvalidParameterError(
                "core radius requires 0 < r_c < a (got r_c=%r)" % self.r_c, parameter="r_c", value=self.r_c
            )

    @property
    def is_circular(self) -> bool:
        return self.a == self.b


@dataclass(frozen=True)
class Masses:
    """Shell mass, apparent core mass, TT increment and TT core mass (kg)."""

    M_s: float
    m_c: float
    delta: float = 0.01
    m_c_TT: float = 0.26

    def __post_init__(self) -> None:
        for name in ("M_s", "m_c", "m_c_TT"):
            value = getattr(self, name)
            if not value > 0:
                raise InvalidParameterError("%s must be > 0" % name, parameter=name, value=value)
        if self.delta < 0:
            raise InvalidParameterError("delta must be >= 0", parameter="delta", value=self.delta)

    @property
    def m_star(self) -> float:
        """Core-to-shell mass ratio m_c / M_s."""
        return self.m_c / self.M_s


@dataclass(frozen=True)
class Inertias:
    I_s: float  # sphere, kg m^2
    I_c_MM: float  # core on the circular momentum maker
    I_c_GB: float  # core on the elliptic gravity breaker


@dataclass(frozen=True)
class Friction:
    """Viscous coefficients (N m s) of the sphere and of the core in each pipe."""

    zeta_theta: float
    zeta_gamma_MM: float
    zeta_gamma_GB: float

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if value < 0:
                raise InvalidParameterError("%s must be >= 0" % f.name, parameter=f.name, value=value)


def derive_inertias(geometry: Geometry, masses: Masses) -> Inertias:
    """Thin spherical shell for the sphere, solid sphere at the path radius for the core."""
    half_axes = (geometry.a + geometry.b) / 2.0
    return Inertias(
        I_s=(2.0 / 3.0) * masses.M_s * geometry.R**2,
        I_c_MM=(2.0 / 5.0) * masses.m_c * geometry.b**2,
        I_c_GB=(2.0 / 5.0) * masses.m_c * half_axes**2,
    )


def validate_mass_ratio(m_c: float, M_s: float) -> bool:
    """True iff 1/10 <= m_c/M_s < 1/3."""
    if not (m_c > 0 and M_s > 0):
        raise InvalidParameterError(
            "masses must be positive (m_c=%r, M_s=%r)" % (m_c, M_s), parameter="m_c" if m_c <= 0 else "M_s"
        )
    ratio = m_c / M_s
    return MASS_RATIO_LOWER <= ratio < MASS_RATIO_UPPER


def tt_core_mass_bounds(M_s: float, delta: float) -> tuple[float, float]:
    """Half-open interval [lo, hi) admissible for the turner-tube core mass."""
    if not M_s > 0:
        raise InvalidParameterError("M_s must be > 0", parameter="M_s", value=M_s)
    if delta < 0:
        raise InvalidParameterError("delta must be >= 0", parameter="delta", value=delta)
    return M_s * MASS_RATIO_LOWER + delta, M_s * MASS_RATIO_UPPER + delta


def tt_mass_valid(masses: Masses) -> bool:
    lo, hi = tt_core_mass_bounds(masses.M_s, masses.delta)
    return lo <= masses.m_c_TT < hi


def reconcile_inertias(derived: Inertias, supplied: Mapping[str, float] | None) -> list[str]:
    """
    Compare user-supplied inertias against the derived ones.

    Returns the names that diverge by more than 1% relative; each is logged as a warning.
    The derived values are always the ones used.
    """
    diverging: list[str] = []
    for name, value in (supplied or {}).items():
        if not hasattr(derived, name):
            raise InvalidParameterError("unknown inertia %r" % name, parameter=name, value=value)
        expected = getattr(derived, name)
        rel = abs(value - expected) / abs(expected)
        if rel > INERTIA_DIVERGENCE_WARN:
            logger.warning(
                "supplied %s=%.6g diverges from derived %.6g by %.1f%%; using derived value",
                name,
                value,
                expected,
                100.0 * rel,
            )
            diverging.append(name)
    return diverging


@dataclass(frozen=True)
class RobotParams:
    """Complete parameter set; construct with RobotParams.build so inertias are derived."""

    geometry: Geometry
    masses: Masses
    inertias: Inertias
    friction: Friction
    hydraulics: HydraulicParams
    g: float = 9.8

    def __post_init__(self) -> None:
        if not self.g > 0:
            raise InvalidParameterError("g must be > 0", parameter="g", value=self.g)
        expected = derive_inertias(self.geometry, self.masses)
        for f in fields(Inertias):
            stored = getattr(self.inertias, f.name)
            target = getattr(expected, f.name)
            if abs(stored - target) > INERTIA_CONSISTENCY_RTOL * abs(target):
                raise InvalidParameterError(
                    "%s=%r is inconsistent with geometry and masses (expected %r)" % (f.name, stored, target),
                    parameter=f.name,
                    value=stored,
                )
        r_c = self.hydraulics.r_c
        if not math.isclose(r_c, self.geometry.r_c, rel_tol=1e-9):
            raise InvalidParameterError(
                "hydraulic core area implies r_c=%r but geometry has r_c=%r" % (r_c, self.geometry.r_c),
                parameter="A_c",
                value=self.hydraulics.A_c,
            )

    @classmethod
    def build(
        cls,
        geometry: Geometry,
        masses: Masses,
        friction: Friction,
        hydraulics: HydraulicParams,
        g: float = 9.8,
        supplied_inertias: Mapping[str, float] | None = None,
    ) -> "RobotParams":
        inertias = derive_inertias(geometry, masses)
        reconcile_inertias(inertias, supplied_inertias)
        if not math.isclose(hydraulics.apparent_mass, masses.m_c, rel_tol=1e-9):
            logger.info(
                "hydraulic apparent mass %.6g differs from dynamic core mass %.6g",
                hydraulics.apparent_mass,
                masses.m_c,
            )
        return cls(geometry=geometry, masses=masses, inertias=inertias, friction=friction, hydraulics=hydraulics, g=g)

    def with_overrides(self, **changes: float) -> "RobotParams":
        """
        Copy with some scalar parameters replaced (any Geometry, Masses or Friction field, or g).

        Inertias are re-derived. Changing r_c rebuilds the hydraulic core area and changing
        m_c keeps the hydraulic apparent mass in step.
        """
        pending = dict(changes)
        geometry = _replace_known(self.geometry, pending)
        masses = _replace_known(self.masses, pending)
        friction = _replace_known(self.friction, pending)
        g = pending.pop("g", self.g)
        if pending:
            name = sorted(pending)[0]
            raise InvalidParameterError("unknown parameter %r" % name, parameter=name, value=pending[name])
        hydraulics = self.hydraulics
        if geometry.r_c != self.geometry.r_c:
            hydraulics = replace(hydraulics, A_c=math.pi * geometry.r_c * geometry.r_c)
        if masses.m_c != self.masses.m_c:
            hydraulics = replace(hydraulics, m_lc=masses.m_c + hydraulics.m_b)
        return RobotParams.build(geometry, masses, friction, hydraulics, g=g)

    def with_mass_ratio(self, m_star: float) -> "RobotParams":
        """Copy with m_c = m_star * M_s (the shell mass is held fixed)."""
        if not m_star > 0:
            raise InvalidParameterError("m_star must be > 0", parameter="m_star", value=m_star)
        return self.with_overrides(m_c=m_star * self.masses.M_s)


def _replace_known(obj, pending: dict):
    names = {f.name for f in fields(obj)}
    picked = {k: pending.pop(k) for k in list(pending) if k in names}
    return replace(obj, **picked) if picked else obj


def table3_params(**overrides: float) -> RobotParams:
    """Published parameter set; the printed inertia table is reconciled (and warned about) on build."""
    values = {**TABLE3, **overrides}
    geometry = Geometry(R=values["R"], a=values["a"], b=values["b"], r_c=values["r_c"])
    masses = Masses(M_s=values["M_s"], m_c=values["m_c"], delta=values["delta"], m_c_TT=values["m_c_TT"])
    friction = Friction(
        zeta_theta=values["zeta_theta"],
        zeta_gamma_MM=values["zeta_gamma_MM"],
        zeta_gamma_GB=values["zeta_gamma_GB"],
    )
    hydraulics = HydraulicParams.from_core_radius(values["r_c"], m_lc=values["m_c"])
    return RobotParams.build(
        geometry, masses, friction, hydraulics, g=values["g"], supplied_inertias=TABLE3_PRINTED_INERTIAS
    )


def default_params() -> RobotParams:
    """Published parameter set without reconciling the printed inertia table."""
    geometry = Geometry(R=TABLE3["R"], a=TABLE3["a"], b=TABLE3["b"], r_c=TABLE3["r_c"])
    masses = Masses(M_s=TABLE3["M_s"], m_c=TABLE3["m_c"], delta=TABLE3["delta"], m_c_TT=TABLE3["m_c_TT"])
    friction = Friction(TABLE3["zeta_theta"], TABLE3["zeta_gamma_MM"], TABLE3["zeta_gamma_GB"])
    hydraulics = HydraulicParams.from_core_radius(TABLE3["r_c"], m_lc=TABLE3["m_c"])
    return RobotParams.build(geometry, masses, friction, hydraulics, g=TABLE3["g"])
