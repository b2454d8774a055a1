"""
Forward-locomotion switching logic, evaluated once per integrator sample.

While the core is no faster than the sphere it stays in the momentum maker. Once it is
faster, it is passed into the gravity breaker when the entry window holds; otherwise it
keeps circulating in the momentum maker, and when it reaches mid-pipe it crosses through
the gravity breaker of the other region. A gravity-breaker pass runs to the next junction
before the core can return to the momentum maker.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

from rollroller.controller.constraints import (
    DEFAULT_CONTROLLER,
    ControllerConfig,
    EntryRule,
    gb_crossing_condition,
    gb_entry_condition,
    gb_pass_complete,
    in_gb_window,
)
from rollroller.controller.gates import CycleLabel, Gates, Ports, gate_port_config
from rollroller.dynamics.state import PathMode, State
from rollroller.integrator.trajectory import EventKind, Region

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ControllerState:
    region: Region
    mode: PathMode
    cycle_label: CycleLabel
    gb_entry_gamma: float | None = None  # core angle where the running GB pass began

    @property
    def gates(self) -> Gates:
        return gate_port_config(self.cycle_label)[0]

    @property
    def ports(self) -> Ports:
        return gate_port_config(self.cycle_label)[1]

    @classmethod
    def initial(cls, state: State, mode: PathMode = PathMode.MM) -> "ControllerState":
        """Region from the side of the pipe the core starts on."""
        region = Region.ALPHA if math.sin(state.gamma) <= 0 else Region.BETA
        label = assign_cycle_label(region, mode, near_equilibrium=False, previous=None)
        entry = state.gamma if mode is PathMode.GB else None
        return cls(region=region, mode=mode, cycle_label=label, gb_entry_gamma=entry)


def assign_cycle_label(
    region: Region, mode: PathMode, *, near_equilibrium: bool, previous: CycleLabel | None
) -> CycleLabel:
    if mode is PathMode.GB:
        return CycleLabel.B if region is Region.ALPHA else CycleLabel.G
    if near_equilibrium:
        return CycleLabel.A if region is Region.ALPHA else CycleLabel.H
    if region is Region.ALPHA:
        return CycleLabel.C
    if previous in (CycleLabel.A, CycleLabel.B, CycleLabel.C, CycleLabel.D):
        return CycleLabel.D
    return CycleLabel.F


def _entry_holds(state: State, cfg: ControllerConfig) -> bool:
    if cfg.entry_rule is EntryRule.WINDOW:
        return in_gb_window(state, cfg)
    return gb_entry_condition(state, strict=cfg.strict_paper_constraints, cfg=cfg)


def controller_step(
    state: State,
    cs: ControllerState,
    cfg: ControllerConfig = DEFAULT_CONTROLLER,
    *,
    near_equilibrium: bool = False,
) -> ControllerState:
    """Next controller state for the sampled state."""
    region = cs.region
    entry = None
    holding = (
        cs.mode is PathMode.GB
        and cs.gb_entry_gamma is not None
        and not gb_pass_complete(state, cs.gb_entry_gamma, cfg)
    )
    if not cfg.enabled:
        mode = PathMode.MM
    elif holding:
        mode, entry = PathMode.GB, cs.gb_entry_gamma
    elif abs(state.gamma_dot) <= abs(state.theta_dot):
        mode = PathMode.MM
    elif _entry_holds(state, cfg):
        mode, entry = PathMode.GB, state.gamma
    elif cs.mode is PathMode.MM and gb_crossing_condition(state, cfg):
        mode, entry = PathMode.GB, state.gamma
        region = region.toggled()
    elif cs.mode is PathMode.GB and cs.gb_entry_gamma is None and gb_crossing_condition(state, cfg):
        mode = PathMode.GB
    else:
        mode = PathMode.MM

    label = assign_cycle_label(region, mode, near_equilibrium=near_equilibrium, previous=cs.cycle_label)
    if mode is cs.mode and region is cs.region and label is cs.cycle_label and entry == cs.gb_entry_gamma:
        return cs
    if cs.mode is PathMode.GB and mode is PathMode.MM and cs.gb_entry_gamma is not None:
        logger.debug("GB pass done: gamma %.4f -> %.4f", cs.gb_entry_gamma, state.gamma)
    return replace(cs, region=region, mode=mode, cycle_label=label, gb_entry_gamma=entry)


def transition_events(before: ControllerState, after: ControllerState) -> tuple[EventKind, ...]:
    events: list[EventKind] = []
    if before.mode is PathMode.MM and after.mode is PathMode.GB:
        events.append(EventKind.GB_ENTRY)
    elif before.mode is PathMode.GB and after.mode is PathMode.MM:
        events.append(EventKind.GB_EXIT)
    if before.region is not after.region:
        events.append(EventKind.REGION_SWITCH)
    return tuple(events)
