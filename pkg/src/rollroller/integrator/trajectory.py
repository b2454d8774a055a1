"""Sampled trajectories and the switching event log."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np
import pandas as pd

from rollroller.dynamics.state import PathMode, State
from rollroller.errors import TrajectoryRangeError

TRAJECTORY_COLUMNS = ["t", "theta", "theta_dot", "gamma", "gamma_dot", "mode", "region"]


class Region(str, Enum):
    """Half-tube region the switching logic alternates between."""

    ALPHA = "alpha"
    BETA = "beta"

    def toggled(self) -> "Region":
        return Region.BETA if self is Region.ALPHA else Region.ALPHA


class EventKind(str, Enum):
    GB_ENTRY = "GB_ENTRY"
    GB_EXIT = "GB_EXIT"
    REGION_SWITCH = "REGION_SWITCH"


@dataclass(frozen=True)
class Sample:
    t: float
    state: State
    mode: PathMode
    region: Region


@dataclass(frozen=True)
class TrajectoryEvent:
    t: float
    kind: EventKind
    state: State


@dataclass(frozen=True)
class HookResult:
    """What a per-sample hook reports back to the integrator."""

    mode: PathMode = PathMode.MM
    region: Region = Region.ALPHA
    events: tuple[EventKind, ...] = ()
    restart: bool = False  # right-hand side changed at this sample


@dataclass
class Trajectory:
    samples: list[Sample] = field(default_factory=list)
    events: list[TrajectoryEvent] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.samples)

    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples], dtype=float)

    def states(self) -> np.ndarray:
        """(n, 4) array of [theta, theta_dot, gamma, gamma_dot]."""
        if not self.samples:
            return np.empty((0, 4))
        return np.array([s.state.as_array() for s in self.samples])

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(s.state, name) for s in self.samples], dtype=float)

    @property
    def span(self) -> tuple[float, float]:
        if not self.samples:
            raise TrajectoryRangeError("empty trajectory", t_eval=float("nan"), bounds=(0.0, 0.0))
        return self.samples[0].t, self.samples[-1].t

    @property
    def final_state(self) -> State:
        return self.samples[-1].state

    def theta_at(self, t_eval: float) -> float:
        """Sphere angle at t_eval, linearly interpolated between samples."""
        lo, hi = self.span
        if not (lo - 1e-12 <= t_eval <= hi + 1e-12):
            raise TrajectoryRangeError(
                "t_eval=%.6g outside trajectory span [%.6g, %.6g]" % (t_eval, lo, hi), t_eval=t_eval, bounds=(lo, hi)
            )
        return float(np.interp(t_eval, self.times(), self.column("theta")))

    def jump_events(self) -> list[TrajectoryEvent]:
        """GB exits: the core re-enters the momentum maker carrying its GB velocity."""
        return [e for e in self.events if e.kind is EventKind.GB_EXIT]

    def gb_passes(self) -> list[tuple[TrajectoryEvent, TrajectoryEvent]]:
        """(entry, exit) event pairs of every completed gravity-breaker pass."""
        passes = []
        entry: TrajectoryEvent | None = None
        for e in self.events:
            if e.kind is EventKind.GB_ENTRY:
                entry = e
            elif e.kind is EventKind.GB_EXIT and entry is not None:
                passes.append((entry, e))
                entry = None
        return passes

    def to_frame(self, energy: Callable[[Sample], float] | None = None) -> pd.DataFrame:
        frame = pd.DataFrame(
            {
                "t": self.times(),
                "theta": self.column("theta"),
                "theta_dot": self.column("theta_dot"),
                "gamma": self.column("gamma"),
                "gamma_dot": self.column("gamma_dot"),
                "mode": [s.mode.value for s in self.samples],
                "region": [s.region.value for s in self.samples],
            },
            columns=TRAJECTORY_COLUMNS,
        )
        if energy is not None:
            frame["energy"] = [energy(s) for s in self.samples]
        return frame

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "Trajectory":
        """Rebuild samples from a frame with the trajectory columns; events are not stored in frames."""
        missing = [c for c in TRAJECTORY_COLUMNS if c not in frame.columns]
        if missing:
            raise ValueError("trajectory frame missing columns: %s" % missing)
        samples = [
            Sample(
                t=float(row.t),
                state=State(float(row.theta), float(row.theta_dot), float(row.gamma), float(row.gamma_dot)),
                mode=PathMode(row.mode),
                region=Region(row.region),
            )
            for row in frame.itertuples(index=False)
        ]
        return cls(samples=samples)
