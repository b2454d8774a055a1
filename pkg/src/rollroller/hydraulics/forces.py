"""
Hydraulic force demand, cylinder-transmitted force and the resulting core torque.

The core is lifted by fluid pushed from a double-acting cylinder; the torque on the core
is the transmitted force acting at the pipe radius b, once per involved circuit.
"""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

from rollroller.errors import ActuationInfeasibleError, InvalidGeometryError, InvalidParameterError
from rollroller.hydraulics.params import HydraulicParams

if TYPE_CHECKING:
    from rollroller.model.params import RobotParams

logger = logging.getLogger(__name__)


def max_required_force(h: HydraulicParams, g: float) -> float:
    """Worst-case force to move the core: apparent weight plus pressure load (wall friction neglected)."""
    return h.apparent_mass * g + h.delta_P * h.A_c


def transmitted_force(h: HydraulicParams) -> float:
    """Force delivered to the core by the cylinder pair driven with F_LA."""
    if not (h.D1 > h.D2 > 0):
        raise InvalidGeometryError(
            "cylinder requires D1 > D2 > 0 (got D1=%r, D2=%r)" % (h.D1, h.D2), parameter="D2", value=h.D2
        )
    d1_sq = h.D1 * h.D1
    d2_sq = h.D2 * h.D2
    r_c_sq = h.A_c / math.pi
    return 8.0 * r_c_sq * h.F_LA * (2.0 * d1_sq - d2_sq) / (d1_sq * (d1_sq - d2_sq))


def actuation_feasible(h: HydraulicParams, g: float) -> bool:
    """Strict test: the transmitted force must exceed the maximum demand."""
    return transmitted_force(h) > max_required_force(h, g)


def core_torque(params: "RobotParams", direction: float) -> float:
    """
    Torque on the core coordinate; the sphere coordinate is never actuated.

    direction is a signed throttle in [-1, 1]: +-1 applies the full transmitted force,
    fractions model a reduced actuator input.
    """
    if not -1.0 <= direction <= 1.0:
        raise InvalidParameterError("direction must lie in [-1, 1]", parameter="direction", value=direction)
    if direction == 0:
        return 0.0
    h = params.hydraulics
    transmitted = transmitted_force(h)
    required = max_required_force(h, params.g)
    if not transmitted > required:
        raise ActuationInfeasibleError(
            "transmitted force %.4g N does not exceed required %.4g N" % (transmitted, required),
            required=required,
            transmitted=transmitted,
        )
    return direction * params.geometry.b * h.s * transmitted


def torque_command(params: "RobotParams", target_torque: float) -> float:
    """Core torque for a requested value, reached by throttling the actuator."""
    h = params.hydraulics
    capacity = params.geometry.b * h.s * transmitted_force(h)
    if capacity <= 0:
        if target_torque == 0:
            return 0.0
        raise ActuationInfeasibleError(
            "actuator delivers no force", required=max_required_force(h, params.g), transmitted=0.0
        )
    throttle = target_torque / capacity
    if abs(throttle) > 1.0:
        raise ActuationInfeasibleError(
            "requested %.4g N m exceeds actuator capacity %.4g N m" % (target_torque, capacity),
            required=abs(target_torque) / (params.geometry.b * h.s),
            transmitted=transmitted_force(h),
        )
    logger.debug("torque command %.4g N m -> throttle %.5f of %.4g N m", target_torque, throttle, capacity)
    return core_torque(params, throttle)
