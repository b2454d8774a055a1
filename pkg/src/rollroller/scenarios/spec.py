"""
Scenario description: initial state, parameters, actuation and horizon.

A ScenarioSpec serializes to the config file layout (params, integrator, controller,
dynamics plus a `scenario` block), so a spec written by `to_dict` loads back through
`load_config` + `spec_from_config`.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from typing import Any, Mapping

from rollroller.config import DEFAULT_CONFIG, SimConfig, config_from_mapping, config_to_dict
from rollroller.controller.constraints import ControllerConfig
from rollroller.dynamics.eom import DEFAULT_DYNAMICS, DynamicsOptions
from rollroller.dynamics.state import PathMode, State
from rollroller.errors import ConfigError, InvalidParameterError
from rollroller.integrator.dopri import IntegratorConfig
from rollroller.model.params import RobotParams, default_params

SCENARIO_KEYS = ("name", "x0", "torque", "mode0", "t_end", "sweep")
STATE_SWEEP_PARAMETERS = ("theta0", "theta_dot0", "gamma0", "gamma_dot0")


@dataclass(frozen=True)
class SweepGrid:
    """Values taken by one parameter: a state entry, m_star, torque, or any scalar model parameter."""

    parameter: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ConfigError("sweep grid for %r is empty" % self.parameter, key="scenario.sweep.values")


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    x0: State
    params: RobotParams = field(default_factory=default_params)
    controller: ControllerConfig = field(default_factory=lambda: ControllerConfig(enabled=False))
    torque: float = 0.0  # N m on the core coordinate
    mode0: PathMode = PathMode.MM
    t_end: float = 15.0  # s
    sweep: SweepGrid | None = None
    dynamics: DynamicsOptions = DEFAULT_DYNAMICS
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)

    def __post_init__(self) -> None:
        if not self.t_end > 0:
            raise InvalidParameterError("t_end must be > 0", parameter="t_end", value=self.t_end)
        object.__setattr__(self, "mode0", PathMode(self.mode0))

    def integrator_config(self) -> IntegratorConfig:
        cfg = self.integrator.with_t_end(self.t_end)
        if cfg.sample_dt > self.t_end:
            cfg = replace(cfg, sample_dt=self.t_end)
        return cfg

    def with_point(self, parameter: str, value: float) -> "ScenarioSpec":
        """Copy with one sweep parameter set to value."""
        if parameter in STATE_SWEEP_PARAMETERS:
            field_name = parameter[:-1]
            return replace(self, x0=replace(self.x0, **{field_name: value}), sweep=None)
        if parameter == "m_star":
            return replace(self, params=self.params.with_mass_ratio(value), sweep=None)
        if parameter == "torque":
            return replace(self, torque=value, sweep=None)
        return replace(self, params=self.params.with_overrides(**{parameter: value}), sweep=None)

    def points(self) -> list["ScenarioSpec"]:
        """One spec per grid value, in grid order (just this spec without a sweep)."""
        if self.sweep is None:
            return [self]
        return [self.with_point(self.sweep.parameter, v) for v in self.sweep.values]

    def to_config(self) -> SimConfig:
        return replace(
            DEFAULT_CONFIG,
            params=self.params,
            integrator=self.integrator,
            controller=self.controller,
            dynamics=self.dynamics,
            scenario=self.scenario_block(),
        )

    def scenario_block(self) -> dict[str, Any]:
        block: dict[str, Any] = {
            "name": self.name,
            "x0": list(self.x0.as_array().tolist()),
            "torque": self.torque,
            "mode0": self.mode0.value,
            "t_end": self.t_end,
        }
        if self.sweep is not None:
            block["sweep"] = {"parameter": self.sweep.parameter, "values": list(self.sweep.values)}
        return block

    def to_dict(self) -> dict[str, Any]:
        data = config_to_dict(self.to_config())
        data.pop("sweep", None)
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ScenarioSpec":
        return spec_from_config(config_from_mapping(data))

    def stamp(self) -> str:
        """SHA-1 of the canonical JSON form; identical specs give identical stamps."""
        text = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha1(text.encode("utf-8")).hexdigest()


def spec_from_config(cfg: SimConfig, *, default_name: str = "custom") -> ScenarioSpec:
    """Build a ScenarioSpec from a config whose `scenario` block holds at least x0."""
    block = dict(cfg.scenario)
    for key in block:
        if key not in SCENARIO_KEYS:
            raise ConfigError("unknown config key %r" % ("scenario.%s" % key), key="scenario.%s" % key)
    if "x0" not in block:
        raise ConfigError("scenario.x0 is required", key="scenario.x0")
    x0 = block["x0"]
    if not isinstance(x0, (list, tuple)) or len(x0) != 4:
        raise ConfigError("scenario.x0 must be [theta, theta_dot, gamma, gamma_dot]", key="scenario.x0")
    sweep = None
    if block.get("sweep"):
        raw = block["sweep"]
        if not isinstance(raw, Mapping) or set(raw) != {"parameter", "values"}:
            raise ConfigError("scenario.sweep needs exactly parameter and values", key="scenario.sweep")
        sweep = SweepGrid(str(raw["parameter"]), tuple(raw["values"]))
    try:
        return ScenarioSpec(
            name=str(block.get("name", default_name)),
            x0=State.from_array([float(v) for v in x0]),
            params=cfg.params,
            controller=cfg.controller,
            torque=float(block.get("torque", 0.0)),
            mode0=PathMode(block.get("mode0", PathMode.MM.value)),
            t_end=float(block.get("t_end", cfg.integrator.t_end)),
            sweep=sweep,
            dynamics=cfg.dynamics,
            integrator=cfg.integrator,
        )
    except (InvalidParameterError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError("invalid scenario block: %s" % e, key="scenario") from e
