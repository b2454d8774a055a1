"""Exceptions raised by the simulator, carrying enough context to diagnose a failed run."""

from __future__ import annotations

from typing import Any, Sequence


class RollRollerError(Exception):
    """Base class for every error the engine raises on purpose."""


class InvalidParameterError(RollRollerError, ValueError):
    """Raised when a physical parameter violates its domain (non-positive mass, negative delta, ...)."""

    def __init__(self, message: str, *, parameter: str | None = None, value: Any = None) -> None:
        super().__init__(message)
        self.parameter = parameter or ""
        self.value = value


class InvalidGeometryError(InvalidParameterError):
    """Raised for non-physical hydraulic or pipe geometry (e.g. rod wider than the bore)."""


class SingularDynamicsError(RollRollerError):
    """Raised when the acceleration-coefficient matrix cannot be inverted."""

    def __init__(self, message: str, *, det: float, state: Any = None) -> None:
        super().__init__(message)
        self.det = det
        self.state = state


class ActuationInfeasibleError(RollRollerError):
    """Raised when a nonzero core torque is requested but the cylinders cannot lift the core."""

    def __init__(self, message: str, *, required: float, transmitted: float) -> None:
        super().__init__(message)
        self.required = required
        self.transmitted = transmitted


class StiffnessError(RollRollerError):
    """Raised when the adaptive step collapses below the minimum step size."""

    def __init__(self, message: str, *, t: float, step: float, state: Sequence[float]) -> None:
        super().__init__(message)
        self.t = t
        self.step = step
        self.state = tuple(state)


class NumericError(RollRollerError, ArithmeticError):
    """Raised when the right-hand side produces NaN or inf."""

    def __init__(self, message: str, *, t: float, state: Sequence[float]) -> None:
        super().__init__(message)
        self.t = t
        self.state = tuple(state)


class InvalidCycleError(RollRollerError, KeyError):
    """Raised for a cycle label outside a..h."""

    def __init__(self, message: str, *, label: Any = None) -> None:
        super().__init__(message)
        self.label = label

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class TrajectoryRangeError(RollRollerError, ValueError):
    """Raised when a trajectory is queried outside its sampled time span."""

    def __init__(self, message: str, *, t_eval: float, bounds: tuple[float, float]) -> None:
        super().__init__(message)
        self.t_eval = t_eval
        self.bounds = bounds


class ConfigError(RollRollerError, ValueError):
    """Raised for malformed config files; `key` names the offending dotted key."""

    def __init__(self, message: str, *, key: str | None = None, path: str | None = None) -> None:
        super().__init__(message)
        self.key = key or ""
        self.path = path or ""
