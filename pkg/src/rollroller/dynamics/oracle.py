"""
Finite-difference Lagrangian oracle.

Independent of the hand-written coefficients in eom.py: accelerations are recovered from
L = E_k - E_p and P = (zeta_theta theta_dot^2 + zeta_gamma gamma_dot^2)/2 alone, by central
differences. The kinetic energy is quadratic in the rates, so differences in the rates
use a unit step (exact up to rounding); differences in the angles use `step`.
"""

from __future__ import annotations

import logging

import numpy as np
import pandas as pd

from rollroller.dynamics.eom import (
    DEFAULT_DYNAMICS,
    DynamicsBackend,
    DynamicsOptions,
    effective_geometry,
    forward_dynamics,
    kinetic_energy,
    potential_energy,
)
from rollroller.dynamics.state import PathMode, State
from rollroller.model.params import RobotParams

logger = logging.getLogger(__name__)

ORACLE_STEP = 1e-6
RATE_STEP = 1.0
# Relative error uses max(|reference|, ACCEL_FLOOR) as denominator, rad/s^2
ACCEL_FLOOR = 1.0
PAPER_DISCREPANCY_MEDIAN = 1e-3


def _lagrangian(q: np.ndarray, qd: np.ndarray, params: RobotParams, mode: PathMode, options: DynamicsOptions) -> float:
    state = State(q[0], qd[0], q[1], qd[1])
    return kinetic_energy(state, params, mode, options) - potential_energy(state, params, mode, options)


def _momenta(q: np.ndarray, qd: np.ndarray, params: RobotParams, mode: PathMode, options: DynamicsOptions) -> np.ndarray:
    p = np.empty(2)
    for i in range(2):
        e = np.zeros(2)
        e[i] = RATE_STEP
        p[i] = (_lagrangian(q, qd + e, params, mode, options) - _lagrangian(q, qd - e, params, mode, options)) / (
            2.0 * RATE_STEP
        )
    return p


def lagrangian_accelerations(
    state: State,
    params: RobotParams,
    mode: PathMode,
    tau_gamma: float,
    *,
    options: DynamicsOptions = DEFAULT_DYNAMICS,
    step: float = ORACLE_STEP,
) -> tuple[float, float]:
    """
    (theta_ddot, gamma_ddot) from d/dt(dL/dqd) - dL/dq + dP/dqd = Q with q = (theta, gamma).

    Generalized forces are Q = (0, tau_gamma): the actuator acts on the core coordinate only.
    """
    q = np.array([state.theta, state.gamma])
    qd = np.array([state.theta_dot, state.gamma_dot])

    mass = np.empty((2, 2))
    for j in range(2):
        e = np.zeros(2)
        e[j] = RATE_STEP
        mass[:, j] = (_momenta(q, qd + e, params, mode, options) - _momenta(q, qd - e, params, mode, options)) / (
            2.0 * RATE_STEP
        )

    # (d p / d q) . qd as one directional difference along the rates
    convective = (
        _momenta(q + step * qd, qd, params, mode, options) - _momenta(q - step * qd, qd, params, mode, options)
    ) / (2.0 * step)

    grad_q = np.empty(2)
    for i in range(2):
        e = np.zeros(2)
        e[i] = step
        grad_q[i] = (_lagrangian(q + e, qd, params, mode, options) - _lagrangian(q - e, qd, params, mode, options)) / (
            2.0 * step
        )

    eg = effective_geometry(params, mode)
    dissipation = np.array([params.friction.zeta_theta * qd[0], eg.zeta_gamma_eff * qd[1]])
    forces = np.array([0.0, tau_gamma])

    qdd = np.linalg.solve(mass, forces - convective + grad_q - dissipation)
    return float(qdd[0]), float(qdd[1])


def relative_error(value: float, reference: float) -> float:
    return abs(value - reference) / max(abs(reference), ACCEL_FLOOR)


def random_states(n: int, seed: int = 0, span: float = 2.0 * np.pi) -> list[State]:
    """Uniform states in [-span, span]^4."""
    rng = np.random.default_rng(seed)
    draws = rng.uniform(-span, span, size=(n, 4))
    return [State.from_array(row) for row in draws]


def oracle_report(
    params: RobotParams,
    n_states: int = 1000,
    seed: int = 0,
    *,
    modes: tuple[PathMode, ...] = (PathMode.GB, PathMode.MM),
    tau_gamma: float = 0.0,
    options: DynamicsOptions = DEFAULT_DYNAMICS,
) -> pd.DataFrame:
    """
    Per-state accelerations of the oracle and of both backends, with relative errors.

    `options.potential` selects the potential convention; the backend field is ignored and
    both backends are evaluated. Every drawn state is checked in each pipe of `modes`.
    """
    derived = DynamicsOptions(backend=DynamicsBackend.DERIVED, potential=options.potential)
    paper = DynamicsOptions(backend=DynamicsBackend.PAPER, potential=options.potential)
    rows = []
    for mode in modes:
        for state in random_states(n_states, seed):
            rows.append(_oracle_row(state, params, mode, tau_gamma, derived, paper))
    return pd.DataFrame(rows)


def _oracle_row(
    state: State,
    params: RobotParams,
    mode: PathMode,
    tau_gamma: float,
    derived: DynamicsOptions,
    paper: DynamicsOptions,
) -> dict:
    ref = lagrangian_accelerations(state, params, mode, tau_gamma, options=derived)
    der = forward_dynamics(state, params, mode, tau_gamma, derived)
    pap = forward_dynamics(state, params, mode, tau_gamma, paper)
    return {
        "mode": mode.value,
        "theta": state.theta,
        "theta_dot": state.theta_dot,
        "gamma": state.gamma,
        "gamma_dot": state.gamma_dot,
        "oracle_theta_ddot": ref[0],
        "oracle_gamma_ddot": ref[1],
        "derived_theta_ddot": der[0],
        "derived_gamma_ddot": der[1],
        "paper_theta_ddot": pap[0],
        "paper_gamma_ddot": pap[1],
        "derived_rel_err": max(relative_error(der[0], ref[0]), relative_error(der[1], ref[1])),
        "paper_rel_err": max(relative_error(pap[0], ref[0]), relative_error(pap[1], ref[1])),
    }


def summarize_report(frame: pd.DataFrame) -> dict:
    """Max/median errors per backend; a systematic paper-backend gap goes to the discrepancy log."""
    summary = {
        "n_states": int(len(frame)),
        "derived_max_rel_err": float(frame["derived_rel_err"].max()),
        "derived_median_rel_err": float(frame["derived_rel_err"].median()),
        "paper_max_rel_err": float(frame["paper_rel_err"].max()),
        "paper_median_rel_err": float(frame["paper_rel_err"].median()),
        "derived_max_rel_err_by_mode": {
            str(mode): float(err) for mode, err in frame.groupby("mode")["derived_rel_err"].max().items()
        },
    }
    if summary["paper_median_rel_err"] > PAPER_DISCREPANCY_MEDIAN:
        logger.warning(
            "discrepancy: published velocity terms disagree with the Lagrangian (median rel err %.3g, max %.3g)",
            summary["paper_median_rel_err"],
            summary["paper_max_rel_err"],
        )
    logger.info(
        "oracle check on %d states: derived max rel err %.3g", summary["n_states"], summary["derived_max_rel_err"]
    )
    return summary
