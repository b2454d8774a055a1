"""Lumped hydraulic circuit parameters for the core actuators."""

from __future__ import annotations

import math
from dataclasses import dataclass

from rollroller.errors import InvalidParameterError

VALID_CIRCUIT_COUNTS = (1, 2, 3, 4)


@dataclass(frozen=True)
class HydraulicParams:
    """
    One forwarder-tube hydraulic drive.

    A_c is the projected core area; the core radius is recovered from it so the pipe
    geometry and the hydraulics share one r_c. D1 > D2 is checked where the cylinder
    formula needs it (transmitted_force), not here.
    """

    m_lc: float  # actual core mass, kg
    m_b: float  # displaced-fluid mass, kg
    delta_P: float  # top-bottom pressure difference across the core, Pa
    A_c: float  # projected core area, m^2
    F_LA: float  # linear actuator input force, N
    D1: float  # full-bore piston diameter, m
    D2: float  # piston-rod diameter, m
    s: int = 1  # hydraulic circuits involved

    def __post_init__(self) -> None:
        if self.s not in VALID_CIRCUIT_COUNTS:
            raise InvalidParameterError(
                "s must be one of %s, got %r" % (VALID_CIRCUIT_COUNTS, self.s), parameter="s", value=self.s
            )
        if self.m_b < 0:
            raise InvalidParameterError("m_b must be >= 0", parameter="m_b", value=self.m_b)
        if not self.m_lc > self.m_b:
            raise InvalidParameterError(
                "m_lc must exceed m_b (apparent core mass must be positive)", parameter="m_lc", value=self.m_lc
            )
        if not self.A_c > 0:
            raise InvalidParameterError("A_c must be > 0", parameter="A_c", value=self.A_c)
        if self.F_LA < 0:
            raise InvalidParameterError("F_LA must be >= 0", parameter="F_LA", value=self.F_LA)

    @classmethod
    def from_core_radius(
        cls,
        r_c: float,
        *,
        m_lc: float,
        m_b: float = 0.0,
        delta_P: float = 0.0,
        F_LA: float = 1.0,
        D1: float = 0.02,
        D2: float = 0.01,
        s: int = 1,
    ) -> "HydraulicParams":
        if not r_c > 0:
            raise InvalidParameterError("r_c must be > 0", parameter="r_c", value=r_c)
        return cls(m_lc=m_lc, m_b=m_b, delta_P=delta_P, A_c=math.pi * r_c * r_c, F_LA=F_LA, D1=D1, D2=D2, s=s)

    @property
    def r_c(self) -> float:
        """Core radius implied by A_c."""
        return math.sqrt(self.A_c / math.pi)

    @property
    def apparent_mass(self) -> float:
        return self.m_lc - self.m_b
