"""
Equations of motion of the sphere with an internal core on a circular (MM) or elliptic (GB) pipe.

The system is written in the row order [M][theta_ddot; gamma_ddot] + N + G = [tau_gamma; 0]:
row 1 is the core equation, row 2 the sphere equation (which carries the shell inertia).
With phi = gamma + theta, J = I_c + m_c (a^2 + (b^2 - a^2) sin^2 phi), C = k a R m_c cos phi and
A = M_s R^2 + I_s + m_c R^2, the coefficient matrix is [[J - C, J], [A + J - 2C, J - C]].

k is the direction of the sphere center along j per unit R theta_dot. It follows from the
frame: with k-hat up (core at the bottom for phi = 0) rolling without slip moves the center
along +j and k = +1, which is the printed coefficient list. With k-hat down (core at the top
for phi = 0) the contact point sits at phi = pi and the center moves along -j, so k = -1.

Two N vectors are available. "paper" repeats the published velocity terms in both rows;
"derived" carries the Coriolis terms of the Lagrangian and is checked against the
finite-difference oracle. G is the analytic derivative of the potential in phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from rollroller.dynamics.state import PathMode, State
from rollroller.errors import SingularDynamicsError
from rollroller.model.params import RobotParams

DET_MIN = 1e-14
EQUILIBRIUM_TOL = 1e-10


class DynamicsBackend(str, Enum):
    DERIVED = "derived"
    PAPER = "paper"


class PotentialConvention(str, Enum):
    """
    INVERTED measures height along -k (potential maximum at phi = 0, minimum at +-pi);
    PRINTED keeps the literal sign (minimum at phi = 0).
    """

    INVERTED = "inverted"
    PRINTED = "printed"

    @property
    def sign(self) -> float:
        return 1.0 if self is PotentialConvention.INVERTED else -1.0

    @property
    def coupling(self) -> float:
        """k: center velocity along j is k R theta_dot."""
        return -self.sign


@dataclass(frozen=True)
class DynamicsOptions:
    backend: DynamicsBackend = DynamicsBackend.DERIVED
    potential: PotentialConvention = PotentialConvention.INVERTED


DEFAULT_DYNAMICS = DynamicsOptions()


@dataclass(frozen=True)
class EffectiveGeometry:
    """Path semi-axes, core inertia and core friction seen in the active pipe."""

    a_eff: float
    b_eff: float
    I_c_eff: float
    zeta_gamma_eff: float


@dataclass(frozen=True, eq=False)
class EomTerms:
    M: np.ndarray  # 2x2, rows as printed (core equation first)
    N: np.ndarray  # velocity and dissipation terms
    G: np.ndarray  # gravity terms, equal in both rows

    @property
    def det(self) -> float:
        return float(self.M[0, 0] * self.M[1, 1] - self.M[0, 1] * self.M[1, 0])


def effective_geometry(params: RobotParams, mode: PathMode) -> EffectiveGeometry:
    geo = params.geometry
    if mode is PathMode.MM:
        return EffectiveGeometry(geo.b, geo.b, params.inertias.I_c_MM, params.friction.zeta_gamma_MM)
    return EffectiveGeometry(geo.a, geo.b, params.inertias.I_c_GB, params.friction.zeta_gamma_GB)


def core_position(state: State, eg: EffectiveGeometry) -> tuple[float, float]:
    """Core position (y, z) relative to the sphere center, m."""
    phi = state.phi
    return -eg.a_eff * math.sin(phi), -eg.b_eff * math.cos(phi)


def center_velocity(state: State, params: RobotParams, options: DynamicsOptions = DEFAULT_DYNAMICS) -> float:
    """Sphere center velocity along j, m/s."""
    return options.potential.coupling * params.geometry.R * state.theta_dot


def kinetic_energy(
    state: State, params: RobotParams, mode: PathMode, options: DynamicsOptions = DEFAULT_DYNAMICS
) -> float:
    eg = effective_geometry(params, mode)
    R = params.geometry.R
    phi, w = state.phi, state.phi_dot
    v_y = center_velocity(state, params, options) - eg.a_eff * w * math.cos(phi)
    v_z = eg.b_eff * w * math.sin(phi)
    shell = params.masses.M_s * R * R + params.inertias.I_s
    return 0.5 * (
        shell * state.theta_dot**2 + eg.I_c_eff * w * w + params.masses.m_c * (v_y * v_y + v_z * v_z)
    )


def potential_energy(
    state: State, params: RobotParams, mode: PathMode, options: DynamicsOptions = DEFAULT_DYNAMICS
) -> float:
    eg = effective_geometry(params, mode)
    a, b = eg.a_eff, eg.b_eff
    c, s = math.cos(state.phi), math.sin(state.phi)
    radius = a * b / math.sqrt((a * c) ** 2 + (b * s) ** 2)
    return options.potential.sign * params.masses.m_c * params.g * radius * c


def total_energy(
    state: State, params: RobotParams, mode: PathMode, options: DynamicsOptions = DEFAULT_DYNAMICS
) -> float:
    return kinetic_energy(state, params, mode, options) + potential_energy(state, params, mode, options)


def sphere_momentum(
    state: State, params: RobotParams, mode: PathMode, options: DynamicsOptions = DEFAULT_DYNAMICS
) -> float:
    """
    Momentum conjugate to theta at fixed absolute core angle, A theta_dot - C phi_dot.

    theta is cyclic in (theta, phi), so within one pipe its rate is
    -tau_gamma - zeta_theta theta_dot + zeta_gamma gamma_dot. Between two rests with no torque
    the sphere therefore moves by (p0 + zeta_gamma dphi) / (zeta_theta + zeta_gamma).
    """
    eg = effective_geometry(params, mode)
    R = params.geometry.R
    m_c = params.masses.m_c
    A = params.masses.M_s * R * R + params.inertias.I_s + m_c * R * R
    C = options.potential.coupling * eg.a_eff * R * m_c * math.cos(state.phi)
    return A * state.theta_dot - C * state.phi_dot


def _gravity(phi: float, eg: EffectiveGeometry, params: RobotParams, options: DynamicsOptions) -> float:
    a, b = eg.a_eff, eg.b_eff
    s, c = math.sin(phi), math.cos(phi)
    q2 = (a * c) ** 2 + (b * s) ** 2
    return -options.potential.sign * params.masses.m_c * params.g * a * b**3 * s / (q2 * math.sqrt(q2))


def _terms(
    theta: float,
    theta_dot: float,
    gamma: float,
    gamma_dot: float,
    params: RobotParams,
    eg: EffectiveGeometry,
    options: DynamicsOptions,
) -> tuple[np.ndarray, float, float, float]:
    phi = gamma + theta
    w = gamma_dot + theta_dot
    s, co = math.sin(phi), math.cos(phi)
    a, b = eg.a_eff, eg.b_eff
    R = params.geometry.R
    m_c = params.masses.m_c
    ab2 = b * b - a * a
    aR = options.potential.coupling * a * R

    J = eg.I_c_eff + m_c * (a * a + ab2 * s * s)
    cross = aR * m_c * co
    A = params.masses.M_s * R * R + params.inertias.I_s + m_c * R * R
    M = np.array([[J - cross, J], [A + J - 2.0 * cross, J - cross]])

    if options.backend is DynamicsBackend.PAPER:
        velocity = (
            -theta_dot * theta_dot * aR * m_c * s
            - w * w * m_c * s * co * ab2
            - gamma_dot * theta_dot * aR * m_c * s
        )
        n1 = velocity
        n2 = velocity
    else:
        n1 = m_c * ab2 * s * co * w * w
        n2 = m_c * s * (ab2 * co + aR) * w * w
    n1 += eg.zeta_gamma_eff * gamma_dot
    n2 += params.friction.zeta_theta * theta_dot

    return M, n1, n2, _gravity(phi, eg, params, options)


def _check_det(M: np.ndarray, state) -> float:
    det = float(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])
    if not math.isfinite(det) or abs(det) < DET_MIN:
        raise SingularDynamicsError("coefficient matrix is singular (det=%r)" % det, det=det, state=state)
    return det


def eom_terms(
    state: State, params: RobotParams, mode: PathMode, options: DynamicsOptions = DEFAULT_DYNAMICS
) -> EomTerms:
    eg = effective_geometry(params, mode)
    M, n1, n2, grav = _terms(state.theta, state.theta_dot, state.gamma, state.gamma_dot, params, eg, options)
    _check_det(M, state)
    return EomTerms(M=M, N=np.array([n1, n2]), G=np.array([grav, grav]))


def forward_dynamics(
    state: State,
    params: RobotParams,
    mode: PathMode,
    tau_gamma: float,
    options: DynamicsOptions = DEFAULT_DYNAMICS,
) -> tuple[float, float]:
    """Solve the coefficient system for (theta_ddot, gamma_ddot); the sphere torque is zero."""
    terms = eom_terms(state, params, mode, options)
    rhs = np.array([tau_gamma - terms.N[0] - terms.G[0], -terms.N[1] - terms.G[1]])
    theta_ddot, gamma_ddot = np.linalg.solve(terms.M, rhs)
    return float(theta_ddot), float(gamma_ddot)


def state_derivative(
    x: np.ndarray,
    params: RobotParams,
    mode: PathMode,
    tau_gamma: float,
    options: DynamicsOptions = DEFAULT_DYNAMICS,
) -> np.ndarray:
    """d/dt of the packed state [theta, theta_dot, gamma, gamma_dot] for the integrator."""
    theta, theta_dot, gamma, gamma_dot = float(x[0]), float(x[1]), float(x[2]), float(x[3])
    eg = effective_geometry(params, mode)
    M, n1, n2, grav = _terms(theta, theta_dot, gamma, gamma_dot, params, eg, options)
    _check_det(M, tuple(x))
    theta_ddot, gamma_ddot = np.linalg.solve(M, np.array([tau_gamma - n1 - grav, -n2 - grav]))
    return np.array([theta_dot, theta_ddot, gamma_dot, gamma_ddot])


def gravity_load(
    state: State, params: RobotParams, mode: PathMode, options: DynamicsOptions = DEFAULT_DYNAMICS
) -> float:
    """Magnitude of the gravity term; zero at top and bottom dead center."""
    return abs(_gravity(state.phi, effective_geometry(params, mode), params, options))


def is_equilibrium(
    state: State,
    params: RobotParams,
    mode: PathMode,
    tau_gamma: float = 0.0,
    options: DynamicsOptions = DEFAULT_DYNAMICS,
    tol: float = EQUILIBRIUM_TOL,
) -> bool:
    if abs(state.theta_dot) >= tol or abs(state.gamma_dot) >= tol:
        return False
    theta_ddot, gamma_ddot = forward_dynamics(state, params, mode, tau_gamma, options)
    return abs(theta_ddot) < tol and abs(gamma_ddot) < tol
