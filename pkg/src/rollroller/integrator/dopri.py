"""
Explicit Runge-Kutta integration with sample-quantized hooks.

The default method is the Dormand-Prince 5(4) pair with FSAL, an RMS error norm and a PI
step-size controller. Samples fall on exact multiples of sample_dt (plus t_end) and are
filled from the pair's free 4th-order interpolant. A hook runs at every sample; when it
reports a changed right-hand side, the rest of the current step is discarded and
integration restarts from the sample. A classic fixed-step RK4 is kept as a fallback.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Protocol

import numpy as np

from rollroller.dynamics.state import State
from rollroller.errors import InvalidParameterError, NumericError, StiffnessError
from rollroller.integrator.trajectory import HookResult, Sample, Trajectory, TrajectoryEvent

logger = logging.getLogger(__name__)

MIN_STEP = 1e-12

Derivative = Callable[[float, np.ndarray], np.ndarray]


class SampleHook(Protocol):
    def __call__(self, t: float, x: np.ndarray) -> HookResult: ...


class Method(str, Enum):
    DOPRI5 = "dopri5"
    RK4 = "rk4"


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    sample_dt: float = 0.01  # reporting grid, also where hooks fire
    max_step: float = 0.01
    t_end: float = 10.0
    method: Method = Method.DOPRI5

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise InvalidParameterError("tolerances must be > 0", parameter="rel_tol", value=self.rel_tol)
        if not (0 < self.sample_dt <= self.t_end):
            raise InvalidParameterError(
                "require 0 < sample_dt <= t_end (got %r, %r)" % (self.sample_dt, self.t_end),
                parameter="sample_dt",
                value=self.sample_dt,
            )
        if not self.max_step > 0:
            raise InvalidParameterError("max_step must be > 0", parameter="max_step", value=self.max_step)
        object.__setattr__(self, "method", Method(self.method))

    def with_t_end(self, t_end: float) -> "IntegratorConfig":
        return replace(self, t_end=t_end)


# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84])
# 5th minus 4th order weights over all seven stages
_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])
# Interpolant coefficients: y(t + s h) = y + h * K^T P [s, s^2, s^3, s^4]
_P = np.array(
    [
        [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
        [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
        [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
        [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
        [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
    ]
)

SAFETY = 0.9
FAC_MIN = 0.2
FAC_MAX = 10.0
PI_BETA = 0.04
PI_ALPHA = 0.2 - 0.75 * PI_BETA


def sample_times(cfg: IntegratorConfig) -> list[float]:
    """Exact multiples of sample_dt up to t_end, plus t_end itself when it is off-grid."""
    n = int(math.floor(cfg.t_end / cfg.sample_dt + 1e-9))
    times = [k * cfg.sample_dt for k in range(n + 1)]
    if cfg.t_end - times[-1] > 1e-9 * cfg.sample_dt:
        times.append(cfg.t_end)
    return times


def _evaluate(derivative: Derivative, t: float, x: np.ndarray) -> np.ndarray:
    f = np.asarray(derivative(t, x), dtype=float)
    if not np.all(np.isfinite(f)):
        raise NumericError("non-finite derivative at t=%.6g" % t, t=t, state=x)
    return f


def _record(traj: Trajectory, hook: SampleHook | None, t: float, x: np.ndarray) -> HookResult:
    result = hook(t, x) if hook is not None else HookResult()
    state = State.from_array(x)
    traj.samples.append(Sample(t=t, state=state, mode=result.mode, region=result.region))
    for kind in result.events:
        traj.events.append(TrajectoryEvent(t=t, kind=kind, state=state))
    return result


def _error_norm(err: np.ndarray, x: np.ndarray, x_new: np.ndarray, cfg: IntegratorConfig) -> float:
    scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(x), np.abs(x_new))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def _initial_step(derivative: Derivative, t: float, x: np.ndarray, f: np.ndarray, cfg: IntegratorConfig) -> float:
    """Starting step from the size of the solution and its first two derivatives."""
    scale = cfg.abs_tol + cfg.rel_tol * np.abs(x)
    d0 = np.sqrt(np.mean((x / scale) ** 2))
    d1 = np.sqrt(np.mean((f / scale) ** 2))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, cfg.max_step)
    f1 = _evaluate(derivative, t + h0, x + h0 * f)
    d2 = np.sqrt(np.mean(((f1 - f) / scale) ** 2)) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1.0 / 5.0)
    return min(100.0 * h0, h1, cfg.max_step)


def _dopri_step(
    derivative: Derivative, t: float, x: np.ndarray, f: np.ndarray, h: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One trial step; returns (x_new, stages K with FSAL row, error vector)."""
    K = np.empty((7, x.size))
    K[0] = f
    for i in range(1, 6):
        dx = h * (_A[i] @ K[:i])
        K[i] = _evaluate(derivative, t + _C[i] * h, x + dx)
    x_new = x + h * (_B @ K[:6])
    K[6] = _evaluate(derivative, t + h, x_new)
    return x_new, K, h * (K.T @ _E)


def _dense(x: np.ndarray, K: np.ndarray, h: float, s: float) -> np.ndarray:
    powers = np.array([s, s * s, s**3, s**4])
    return x + h * ((K.T @ _P) @ powers)


def integrate(
    derivative: Derivative,
    x0: State,
    cfg: IntegratorConfig,
    hook: SampleHook | None = None,
) -> Trajectory:
    """Integrate from t=0 to cfg.t_end and return the sampled trajectory."""
    times = sample_times(cfg)
    x = x0.as_array()
    traj = Trajectory()
    _record(traj, hook, times[0], x)
    if cfg.method is Method.RK4:
        return _integrate_rk4(derivative, x, cfg, hook, times, traj)

    t = times[0]
    t_stop = times[-1]
    f = _evaluate(derivative, t, x)
    h = _initial_step(derivative, t, x, f, cfg)
    err_prev = 1e-4
    k = 1
    accepted = rejected = restarts = 0

    while k < len(times):
        remaining = t_stop - t
        if remaining <= 1e-12 * max(1.0, t_stop):
            while k < len(times):
                _record(traj, hook, times[k], x)
                k += 1
            break
        h = min(h, cfg.max_step, remaining)
        last = h >= remaining
        x_new, K, err_vec = _dopri_step(derivative, t, x, f, h)
        err = _error_norm(err_vec, x, x_new, cfg)

        if err <= 1.0:
            accepted += 1
            t_new = t_stop if last else t + h
            restarted = False
            while k < len(times) and times[k] <= t_new + 1e-9 * cfg.sample_dt:
                ts = times[k]
                xs = x_new if ts >= t_new else _dense(x, K, h, (ts - t) / h)
                result = _record(traj, hook, ts, xs)
                k += 1
                if result.restart and k < len(times):
                    t, x = ts, xs
                    f = _evaluate(derivative, t, x)
                    restarted = True
                    restarts += 1
                    break
            if not restarted:
                t, x, f = t_new, x_new, K[6]
            if err == 0.0:
                fac = FAC_MAX
            else:
                fac = SAFETY * err ** (-PI_ALPHA) * err_prev**PI_BETA
                fac = min(FAC_MAX, max(FAC_MIN, fac))
            h *= fac
            err_prev = max(err, 1e-4)
        else:
            rejected += 1
            h *= max(FAC_MIN, SAFETY * err ** (-PI_ALPHA)) if math.isfinite(err) else FAC_MIN
            if h < MIN_STEP:
                raise StiffnessError(
                    "step size %.3g below minimum at t=%.6g" % (h, t), t=t, step=h, state=x
                )

    logger.debug(
        "dopri5: %d accepted, %d rejected, %d restarts, %d samples", accepted, rejected, restarts, len(traj)
    )
    return traj


def _rk4_step(derivative: Derivative, t: float, x: np.ndarray, h: float) -> np.ndarray:
    k1 = _evaluate(derivative, t, x)
    k2 = _evaluate(derivative, t + h / 2, x + h / 2 * k1)
    k3 = _evaluate(derivative, t + h / 2, x + h / 2 * k2)
    k4 = _evaluate(derivative, t + h, x + h * k3)
    return x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _integrate_rk4(
    derivative: Derivative,
    x: np.ndarray,
    cfg: IntegratorConfig,
    hook: SampleHook | None,
    times: list[float],
    traj: Trajectory,
) -> Trajectory:
    """Classic RK4 with a whole number of equal steps between consecutive samples."""
    for t0, t1 in zip(times[:-1], times[1:]):
        span = t1 - t0
        n_sub = max(1, math.ceil(span / cfg.max_step - 1e-9))
        h = span / n_sub
        t = t0
        for _ in range(n_sub):
            x = _rk4_step(derivative, t, x, h)
            t += h
        _record(traj, hook, t1, x)
    return traj
