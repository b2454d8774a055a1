"""Lumped hydraulic actuation: force demand, transmitted force, feasibility and core torque."""

from rollroller.hydraulics.forces import (
    actuation_feasible,
    core_torque,
    max_required_force,
    torque_command,
    transmitted_force,
)
from rollroller.hydraulics.params import HydraulicParams

__all__ = [
    "HydraulicParams",
    "actuation_feasible",
    "core_torque",
    "max_required_force",
    "torque_command",
    "transmitted_force",
]
