"""Experiment descriptions, the hybrid simulation loop, metrics and the built-in scenario library."""

from rollroller.scenarios.library import (
    BUILTIN_SCENARIOS,
    CaseFourReport,
    CaseThreeReport,
    CaseTwoReport,
    ForwardReport,
    MassSweepPoint,
    MassSweepReport,
    ScenarioOutcome,
    ScenarioRun,
    mass_ratio_sweep,
    pendulum_baseline,
    run_case1,
    run_case2,
    run_case3,
    run_case4,
    run_custom,
    run_forward_locomotion,
    run_spec,
)
from rollroller.scenarios.metrics import (
    JumpEvent,
    Metrics,
    SettlingResult,
    TargetCheck,
    compute_metrics,
    offset_metric,
    settled_time,
    settling_metrics,
)
from rollroller.scenarios.simulate import simulate
from rollroller.scenarios.spec import ScenarioSpec, SweepGrid, spec_from_config

__all__ = [
    "BUILTIN_SCENARIOS",
    "CaseFourReport",
    "CaseThreeReport",
    "CaseTwoReport",
    "ForwardReport",
    "JumpEvent",
    "MassSweepPoint",
    "MassSweepReport",
    "Metrics",
    "ScenarioOutcome",
    "ScenarioRun",
    "ScenarioSpec",
    "SettlingResult",
    "SweepGrid",
    "TargetCheck",
    "compute_metrics",
    "mass_ratio_sweep",
    "offset_metric",
    "pendulum_baseline",
    "run_case1",
    "run_case2",
    "run_case3",
    "run_case4",
    "run_custom",
    "run_forward_locomotion",
    "run_spec",
    "settled_time",
    "settling_metrics",
    "simulate",
    "spec_from_config",
]
