"""
Configuration with defaults for rollroller.

A config file is YAML (JSON also parses) with optional blocks:

    params:      g, M_s, m_c, R, a, b, r_c, zeta_theta, zeta_gamma_MM, zeta_gamma_GB, delta, m_c_TT,
                 plus nested `hydraulics` (HydraulicParams fields) and `inertias` (checked only)
    integrator:  IntegratorConfig fields
    controller:  ControllerConfig fields
    dynamics:    backend (derived|paper), potential (inverted|printed)
    sweep:       SweepConfig fields
    scenario:    name, x0, torque, mode0, t_end, sweep {parameter, values}

Unknown keys are rejected with the dotted key name so typos never pass silently.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import asdict, dataclass, field, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any, Mapping

import yaml

from rollroller.controller.constraints import ControllerConfig
from rollroller.dynamics.eom import DynamicsBackend, DynamicsOptions, PotentialConvention
from rollroller.errors import ConfigError, InvalidParameterError
from rollroller.hydraulics.params import HydraulicParams
from rollroller.integrator.dopri import IntegratorConfig
from rollroller.model.params import TABLE3, Friction, Geometry, Masses, RobotParams, default_params

logger = logging.getLogger(__name__)

PARAM_KEYS = tuple(TABLE3)
HYDRAULIC_KEYS = tuple(f.name for f in fields(HydraulicParams))
INERTIA_KEYS = ("I_s", "I_c_MM", "I_c_GB")
TOP_LEVEL_KEYS = ("params", "integrator", "controller", "dynamics", "sweep", "scenario")

ENV_OUTPUT_DIR = "ROLLROLLER_OUTPUT_DIR"
ENV_LOG_LEVEL = "ROLLROLLER_LOG_LEVEL"
ENV_SWEEP_WORKERS = "ROLLROLLER_SWEEP_WORKERS"


@dataclass(frozen=True)
class SweepConfig:
    """Concurrency and classification thresholds for parameter sweeps."""

    workers: int = 4
    ripple_limit: float = 0.05  # peak-to-peak theta_dot over the last third, rad/s
    overshoot_limit: float = 0.5  # fraction of the step
    grid: tuple[float, ...] = ()  # empty = scenario default grid

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise InvalidParameterError("workers must be >= 1", parameter="workers", value=self.workers)
        object.__setattr__(self, "grid", tuple(float(v) for v in self.grid))


@dataclass(frozen=True)
class SimConfig:
    """Everything a run needs besides the scenario itself."""

    params: RobotParams = field(default_factory=default_params)
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    controller: ControllerConfig = field(default_factory=ControllerConfig)
    dynamics: DynamicsOptions = field(default_factory=DynamicsOptions)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    scenario: Mapping[str, Any] = field(default_factory=dict)  # raw block, parsed by scenarios.spec


DEFAULT_CONFIG = SimConfig()


def _check_keys(block: Mapping[str, Any], allowed: tuple[str, ...], prefix: str) -> None:
    if not isinstance(block, Mapping):
        raise ConfigError("%s must be a mapping" % prefix, key=prefix)
    for key in block:
        if key not in allowed:
            dotted = "%s.%s" % (prefix, key) if prefix else str(key)
            raise ConfigError("unknown config key %r" % dotted, key=dotted)


def _number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError("config key %r must be a number, got %r" % (key, value), key=key)
    return float(value)


def params_from_mapping(data: Mapping[str, Any], base: RobotParams | None = None) -> RobotParams:
    """Build RobotParams from a `params` block, filling gaps from `base` (published values by default)."""
    allowed = PARAM_KEYS + ("hydraulics", "inertias")
    _check_keys(data, allowed, "params")
    base = base or default_params()
    current = params_to_dict(base)
    values = {k: _number(v, "params.%s" % k) for k, v in data.items() if k in PARAM_KEYS}
    merged = {k: float(current[k]) for k in PARAM_KEYS}
    merged.update(values)

    hyd_block = data.get("hydraulics") or {}
    _check_keys(hyd_block, HYDRAULIC_KEYS, "params.hydraulics")
    hyd = dict(current["hydraulics"])
    if "m_c" in values and "m_lc" not in hyd_block:
        hyd["m_lc"] = merged["m_c"] + float(hyd_block.get("m_b", hyd["m_b"]))
    for key, value in hyd_block.items():
        hyd[key] = _number(value, "params.hydraulics.%s" % key)
    if "A_c" not in hyd_block:
        hyd["A_c"] = math.pi * merged["r_c"] * merged["r_c"]
    hyd["s"] = int(hyd["s"])

    inertia_block = data.get("inertias") or {}
    _check_keys(inertia_block, INERTIA_KEYS, "params.inertias")
    supplied = {k: _number(v, "params.inertias.%s" % k) for k, v in inertia_block.items()}

    try:
        return RobotParams.build(
            Geometry(R=merged["R"], a=merged["a"], b=merged["b"], r_c=merged["r_c"]),
            Masses(M_s=merged["M_s"], m_c=merged["m_c"], delta=merged["delta"], m_c_TT=merged["m_c_TT"]),
            Friction(merged["zeta_theta"], merged["zeta_gamma_MM"], merged["zeta_gamma_GB"]),
            HydraulicParams(**hyd),
            g=merged["g"],
            supplied_inertias=supplied,
        )
    except InvalidParameterError as e:
        key = "params.%s" % e.parameter if e.parameter else "params"
        raise ConfigError("invalid value for %s: %s" % (key, e), key=key) from e


def params_to_dict(params: RobotParams) -> dict[str, Any]:
    out: dict[str, Any] = {}
    out.update(asdict(params.geometry))
    out.update(asdict(params.masses))
    out.update(asdict(params.friction))
    out["g"] = params.g
    out["hydraulics"] = asdict(params.hydraulics)
    return {k: out[k] for k in PARAM_KEYS} | {"hydraulics": out["hydraulics"]}


def _dataclass_from_block(cls, block: Mapping[str, Any], prefix: str, base):
    names = tuple(f.name for f in fields(cls))
    _check_keys(block, names, prefix)
    try:
        return replace(base, **dict(block))
    except (InvalidParameterError, ValueError, TypeError) as e:
        raise ConfigError("invalid %s block: %s" % (prefix, e), key=prefix) from e


def config_from_mapping(data: Mapping[str, Any] | None, base: SimConfig | None = None) -> SimConfig:
    base = base or DEFAULT_CONFIG
    data = data or {}
    _check_keys(data, TOP_LEVEL_KEYS, "")

    params = params_from_mapping(data["params"], base.params) if data.get("params") else base.params
    integrator = _dataclass_from_block(IntegratorConfig, data.get("integrator") or {}, "integrator", base.integrator)
    controller = _dataclass_from_block(ControllerConfig, data.get("controller") or {}, "controller", base.controller)
    sweep = _dataclass_from_block(SweepConfig, data.get("sweep") or {}, "sweep", base.sweep)

    dyn_block = data.get("dynamics") or {}
    _check_keys(dyn_block, ("backend", "potential"), "dynamics")
    try:
        dynamics = DynamicsOptions(
            backend=DynamicsBackend(dyn_block.get("backend", base.dynamics.backend)),
            potential=PotentialConvention(dyn_block.get("potential", base.dynamics.potential)),
        )
    except ValueError as e:
        raise ConfigError("invalid dynamics block: %s" % e, key="dynamics") from e

    scenario = data.get("scenario") or base.scenario
    if not isinstance(scenario, Mapping):
        raise ConfigError("scenario must be a mapping", key="scenario")
    return SimConfig(
        params=params, integrator=integrator, controller=controller, dynamics=dynamics, sweep=sweep, scenario=scenario
    )


def load_config(path: str | Path, base: SimConfig | None = None) -> SimConfig:
    """Read a YAML/JSON config file on top of `base` (defaults when omitted)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError("cannot read config %s: %s" % (path, e), path=str(path)) from e
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError("config %s is not valid YAML: %s" % (path, e), path=str(path)) from e
    try:
        cfg = config_from_mapping(data, base)
    except ConfigError as e:
        e.path = str(path)
        raise
    logger.info("loaded config %s", path)
    return cfg


def config_to_dict(cfg: SimConfig) -> dict[str, Any]:
    """Plain dict in the config file layout (enums as their values)."""

    def plain(obj: Any) -> Any:
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, Mapping):
            return {k: plain(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [plain(v) for v in obj]
        return obj

    return {
        "params": params_to_dict(cfg.params),
        "integrator": plain(asdict(cfg.integrator)),
        "controller": plain(asdict(cfg.controller)),
        "dynamics": plain(asdict(cfg.dynamics)),
        "sweep": plain(asdict(cfg.sweep)),
        "scenario": plain(dict(cfg.scenario)),
    }


def apply_env_overrides(cfg: SimConfig) -> SimConfig:
    """ROLLROLLER_SWEEP_WORKERS overrides the sweep worker count."""
    workers = os.environ.get(ENV_SWEEP_WORKERS)
    if not workers:
        return cfg
    try:
        count = int(workers)
    except ValueError as e:
        raise ConfigError("%s must be an integer, got %r" % (ENV_SWEEP_WORKERS, workers), key=ENV_SWEEP_WORKERS) from e
    return replace(cfg, sweep=replace(cfg.sweep, workers=count))
