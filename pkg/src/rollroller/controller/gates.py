"""Gate and port settings for each stage of a forward locomotion cycle."""

from __future__ import annotations

from enum import Enum

from rollroller.errors import InvalidCycleError


class Gate(str, Enum):
    I = "I"  # closed
    II = "II"  # opened toward alpha, closed toward beta
    III = "III"  # opened toward beta, closed toward alpha


class Port(str, Enum):
    O = "O"  # open
    ST = "ST"  # suction
    IT = "IT"  # injection


class CycleLabel(str, Enum):
    A = "a"  # equilibrium, region alpha
    B = "b"  # GB, alpha
    C = "c"  # MM, alpha
    D = "d"  # MM, beta
    E = "e"  # GB, alpha with instantaneous velocity change
    F = "f"  # MM, beta
    G = "g"  # GB, beta
    H = "h"  # equilibrium, region beta


Gates = tuple[Gate, Gate, Gate, Gate]
Ports = tuple[Port, Port, Port, Port]

I, II, III = Gate.I, Gate.II, Gate.III
O, ST, IT = Port.O, Port.ST, Port.IT

GATE_PORT_TABLE: dict[CycleLabel, tuple[Gates, Ports]] = {
    CycleLabel.A: ((II, II, I, II), (O, IT, ST, O)),
    CycleLabel.B: ((II, I, I, II), (IT, O, ST, O)),
    CycleLabel.C: ((I, II, II, I), (O, ST, IT, O)),
    CycleLabel.D: ((II, I, I, II), (IT, O, ST, O)),
    CycleLabel.E: ((II, I, II, II), (IT, ST, ST, O)),
    CycleLabel.F: ((I, II, III, III), (ST, O, O, IT)),
    CycleLabel.G: ((I, III, III, I), (ST, O, IT, O)),
    CycleLabel.H: ((III, II, I, I), (O, IT, O, ST)),
}


def gate_port_config(cycle: CycleLabel | str) -> tuple[Gates, Ports]:
    """Gate modules G1..G4 and ports P1..P4 for a cycle label."""
    try:
        label = CycleLabel(cycle)
    except ValueError:
        raise InvalidCycleError("unknown cycle label %r (expected a..h)" % (cycle,), label=cycle) from None
    return GATE_PORT_TABLE[label]
