"""Physical parameters, derived inertias and the mass-ratio validity gates."""

from rollroller.model.params import (
    TABLE3,
    TABLE3_PRINTED_INERTIAS,
    Friction,
    Geometry,
    Inertias,
    Masses,
    RobotParams,
    default_params,
    derive_inertias,
    reconcile_inertias,
    table3_params,
    tt_core_mass_bounds,
    tt_mass_valid,
    validate_mass_ratio,
)

__all__ = [
    "TABLE3",
    "TABLE3_PRINTED_INERTIAS",
    "Friction",
    "Geometry",
    "Inertias",
    "Masses",
    "RobotParams",
    "default_params",
    "derive_inertias",
    "reconcile_inertias",
    "table3_params",
    "tt_core_mass_bounds",
    "tt_mass_valid",
    "validate_mass_ratio",
]
