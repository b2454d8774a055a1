"""Planar equations of motion, energies and the finite-difference Lagrangian oracle."""

from rollroller.dynamics.eom import (
    DEFAULT_DYNAMICS,
    DynamicsBackend,
    DynamicsOptions,
    EffectiveGeometry,
    EomTerms,
    PotentialConvention,
    center_velocity,
    core_position,
    effective_geometry,
    eom_terms,
    forward_dynamics,
    gravity_load,
    is_equilibrium,
    kinetic_energy,
    potential_energy,
    sphere_momentum,
    state_derivative,
    total_energy,
)
from rollroller.dynamics.state import PathMode, State

__all__ = [
    "DEFAULT_DYNAMICS",
    "DynamicsBackend",
    "DynamicsOptions",
    "EffectiveGeometry",
    "EomTerms",
    "PathMode",
    "PotentialConvention",
    "State",
    "center_velocity",
    "core_position",
    "effective_geometry",
    "eom_terms",
    "forward_dynamics",
    "gravity_load",
    "is_equilibrium",
    "kinetic_energy",
    "potential_energy",
    "sphere_momentum",
    "state_derivative",
    "total_energy",
]
