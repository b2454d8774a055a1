"""Dormand-Prince integration with sample-quantized hooks, and the trajectory container."""

from rollroller.integrator.dopri import IntegratorConfig, Method, SampleHook, integrate, sample_times
from rollroller.integrator.trajectory import (
    EventKind,
    HookResult,
    Region,
    Sample,
    Trajectory,
    TrajectoryEvent,
)

__all__ = [
    "EventKind",
    "HookResult",
    "IntegratorConfig",
    "Method",
    "Region",
    "Sample",
    "SampleHook",
    "Trajectory",
    "TrajectoryEvent",
    "integrate",
    "sample_times",
]
