"""
Trajectory metrics: step-response figures of theta, settling detection, offsets and jump events.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from rollroller.errors import TrajectoryRangeError
from rollroller.integrator.trajectory import Trajectory
from rollroller.utils.math import peak_to_peak, sign_changes

logger = logging.getLogger(__name__)

SETTLE_RATE = 0.01  # rad/s
SETTLE_HOLD = 1.0  # s
SETTLING_BAND = 0.05
STEP_EPS = 1e-12


@dataclass(frozen=True)
class JumpEvent:
    """State when the core leaves the gravity breaker and re-enters the momentum maker."""

    t: float
    gamma: float
    gamma_dot: float
    theta: float
    theta_dot: float


@dataclass(frozen=True)
class TargetCheck:
    name: str
    target: float
    tolerance: float  # relative
    observed: float | None
    within: bool

    @classmethod
    def compare(cls, name: str, target: float, tolerance: float, observed: float | None) -> "TargetCheck":
        within = observed is not None and abs(observed - target) <= tolerance * abs(target)
        return cls(name=name, target=target, tolerance=tolerance, observed=observed, within=within)


@dataclass(frozen=True)
class SettlingResult:
    overshoot: float  # fraction of the step
    settling_time: float  # s; t_end when theta never stays in the band
    settled: bool


@dataclass
class Metrics:
    final_theta: float
    overshoot: float
    settling_time: float
    settled: bool
    min_theta_dot: float
    peak_abs_gamma: float
    theta_dot_sign_changes: int
    offset_vs_baseline: float | None = None
    reversal_threshold: float | None = None
    jump_events: list[JumpEvent] = field(default_factory=list)
    targets: list[TargetCheck] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def settled_time(traj: Trajectory, rate: float = SETTLE_RATE, hold: float = SETTLE_HOLD) -> float | None:
    """First time after which |theta_dot| < rate for at least `hold` seconds; None if never."""
    t = traj.times()
    quiet = np.abs(traj.column("theta_dot")) < rate
    start: float | None = None
    for ti, q in zip(t, quiet):
        if not q:
            start = None
            continue
        if start is None:
            start = float(ti)
        if ti - start >= hold - 1e-9:
            return start
    return None


def settling_metrics(traj: Trajectory, band: float = SETTLING_BAND) -> SettlingResult:
    """
    Overshoot and settling time of theta about its final value.

    The settling time is the first sample after which theta stays within band * |step|
    of the final value (the largest excursion stands in for the step when theta returns
    to its start). Non-settling runs are flagged through `settled`, never raised.
    """
    t = traj.times()
    y = traj.column("theta")
    if y.size == 0:
        raise TrajectoryRangeError("empty trajectory", t_eval=float("nan"), bounds=(0.0, 0.0))
    final = y[-1]
    step = final - y[0]
    deviation = np.abs(y - final)
    if abs(step) > STEP_EPS:
        reference = abs(step)
        overshoot = max(0.0, float(np.max((y - final) * np.sign(step))) / reference)
    else:
        reference = float(deviation.max())
        overshoot = 0.0

    if reference <= STEP_EPS:
        settle_at = float(t[0])
    else:
        outside = np.nonzero(deviation > band * reference)[0]
        if outside.size == 0:
            settle_at = float(t[0])
        elif outside[-1] + 1 < t.size:
            settle_at = float(t[outside[-1] + 1])
        else:
            settle_at = float(t[-1])

    settled = settled_time(traj) is not None
    if not settled:
        logger.warning("theta did not settle (|theta_dot| >= %.3g within the last %.3g s)", SETTLE_RATE, SETTLE_HOLD)
    return SettlingResult(overshoot=overshoot, settling_time=settle_at, settled=settled)


def offset_metric(traj_a: Trajectory, traj_b: Trajectory, t_eval: float) -> float:
    """|theta_A(t_eval)| - |theta_B(t_eval)|; positive when A ends farther from the origin."""
    return abs(traj_a.theta_at(t_eval)) - abs(traj_b.theta_at(t_eval))


def jump_events(traj: Trajectory) -> list[JumpEvent]:
    return [
        JumpEvent(t=e.t, gamma=e.state.gamma, gamma_dot=e.state.gamma_dot, theta=e.state.theta, theta_dot=e.state.theta_dot)
        for e in traj.jump_events()
    ]


def ripple(traj: Trajectory) -> float:
    """Peak-to-peak theta_dot over the final third of the run."""
    t = traj.times()
    if t.size == 0:
        return 0.0
    cutoff = t[0] + 2.0 * (t[-1] - t[0]) / 3.0
    return peak_to_peak(traj.column("theta_dot")[t >= cutoff])


def compute_metrics(traj: Trajectory, *, baseline: Trajectory | None = None) -> Metrics:
    """Metrics of one run; the baseline offset is taken at the last sample time."""
    settling = settling_metrics(traj)
    theta_dot = traj.column("theta_dot")
    offset = None
    if baseline is not None:
        offset = offset_metric(traj, baseline, traj.span[1])
    return Metrics(
        final_theta=traj.final_state.theta,
        overshoot=settling.overshoot,
        settling_time=settling.settling_time,
        settled=settling.settled,
        min_theta_dot=float(theta_dot.min()),
        peak_abs_gamma=float(np.abs(traj.column("gamma")).max()),
        theta_dot_sign_changes=sign_changes(theta_dot, tol=SETTLE_RATE),
        offset_vs_baseline=offset,
        jump_events=jump_events(traj),
    )
