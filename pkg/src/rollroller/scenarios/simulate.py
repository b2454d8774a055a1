"""Hybrid simulation: continuous dynamics in the active pipe plus the per-sample switching logic."""

from __future__ import annotations

import logging

import numpy as np

from rollroller.controller.algorithm import ControllerState, controller_step, transition_events
from rollroller.dynamics.eom import gravity_load, state_derivative
from rollroller.dynamics.state import State
from rollroller.integrator.dopri import integrate
from rollroller.integrator.trajectory import HookResult, Trajectory
from rollroller.scenarios.spec import ScenarioSpec

logger = logging.getLogger(__name__)


class _HybridSystem:
    """Holds the active mode; the integrator sees a smooth right-hand side between samples."""

    def __init__(self, spec: ScenarioSpec) -> None:
        self.spec = spec
        self.controller = ControllerState.initial(spec.x0, spec.mode0)
        p = spec.params
        self.equilibrium_load = spec.controller.equilibrium_fraction * p.masses.m_c * p.g * p.geometry.b

    def derivative(self, t: float, x: np.ndarray) -> np.ndarray:
        return state_derivative(x, self.spec.params, self.controller.mode, self.spec.torque, self.spec.dynamics)

    def on_sample(self, t: float, x: np.ndarray) -> HookResult:
        cs = self.controller
        if not self.spec.controller.enabled:
            return HookResult(mode=cs.mode, region=cs.region)
        state = State.from_array(x)
        near = gravity_load(state, self.spec.params, cs.mode, self.spec.dynamics) < self.equilibrium_load
        new = controller_step(state, cs, self.spec.controller, near_equilibrium=near)
        events = transition_events(cs, new)
        if events:
            logger.debug("t=%.2f %s -> %s (%s)", t, cs.cycle_label.value, new.cycle_label.value, events)
        self.controller = new
        return HookResult(mode=new.mode, region=new.region, events=events, restart=new.mode is not cs.mode)


def simulate(spec: ScenarioSpec) -> Trajectory:
    """
    Integrate one scenario from t=0 to spec.t_end.

    With the controller disabled the mode stays at spec.mode0 for the whole run and the
    integrator never restarts, so the result equals a plain fixed-mode integration.
    """
    system = _HybridSystem(spec)
    traj = integrate(system.derivative, spec.x0, spec.integrator_config(), hook=system.on_sample)
    logger.debug("%s: %d samples, %d events", spec.name, len(traj), len(traj.events))
    return traj
