"""Generalized coordinates of the planar model and the active pipe."""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from rollroller.errors import InvalidParameterError

# Positions within the packed state vector
THETA, THETA_DOT, GAMMA, GAMMA_DOT = 0, 1, 2, 3


class PathMode(str, Enum):
    """Pipe the core currently travels in."""

    MM = "MM"
    GB = "GB"


@dataclass(frozen=True)
class State:
    """Sphere roll angle and core angle along the pipe (unwrapped, rad) with their rates (rad/s)."""

    theta: float
    theta_dot: float
    gamma: float
    gamma_dot: float

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in astuple(self)):
            raise InvalidParameterError("state must be finite: %r" % (astuple(self),), parameter="state")

    @property
    def phi(self) -> float:
        """Absolute core angle gamma + theta."""
        return self.gamma + self.theta

    @property
    def phi_dot(self) -> float:
        return self.gamma_dot + self.theta_dot

    def as_array(self) -> np.ndarray:
        return np.array([self.theta, self.theta_dot, self.gamma, self.gamma_dot], dtype=float)

    @classmethod
    def from_array(cls, x: Sequence[float]) -> "State":
        return cls(float(x[THETA]), float(x[THETA_DOT]), float(x[GAMMA]), float(x[GAMMA_DOT]))

    def negated(self) -> "State":
        return State(-self.theta, -self.theta_dot, -self.gamma, -self.gamma_dot)
