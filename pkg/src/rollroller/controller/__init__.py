"""Switching controller: entry and crossing predicates, region tracking and the gate/port table."""

from rollroller.controller.algorithm import (
    ControllerState,
    assign_cycle_label,
    controller_step,
    transition_events,
)
from rollroller.controller.constraints import (
    DEFAULT_CONTROLLER,
    ControllerConfig,
    EntryRule,
    GbWindow,
    entry_branches,
    gb_crossing_condition,
    gb_crossing_condition_printed,
    gb_entry_condition,
    gb_pass_complete,
    gb_window,
    in_gb_window,
    junction_half_width,
)
from rollroller.controller.gates import GATE_PORT_TABLE, CycleLabel, Gate, Port, gate_port_config
from rollroller.integrator.trajectory import Region

__all__ = [
    "DEFAULT_CONTROLLER",
    "GATE_PORT_TABLE",
    "ControllerConfig",
    "ControllerState",
    "CycleLabel",
    "EntryRule",
    "Gate",
    "GbWindow",
    "Port",
    "Region",
    "assign_cycle_label",
    "controller_step",
    "entry_branches",
    "gate_port_config",
    "gb_crossing_condition",
    "gb_crossing_condition_printed",
    "gb_entry_condition",
    "gb_pass_complete",
    "gb_window",
    "in_gb_window",
    "junction_half_width",
    "transition_events",
]
