"""
Switching predicates: when the core may be passed into the gravity breaker.

gb_entry_condition is the two-branch trigonometric window on (theta, gamma) with the rate
signs; gb_crossing_condition is the simplified mid-pipe test. The literal angular window
(gb_window) is kept for the alternative entry rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from rollroller.dynamics.state import State
from rollroller.errors import InvalidParameterError


class EntryRule(str, Enum):
    CONSTRAINTS = "constraints"
    WINDOW = "window"


@dataclass(frozen=True)
class ControllerConfig:
    eta_theta: float = math.pi / 12  # rad
    eta_gamma: float = math.pi / 12  # rad
    cos_theta_thresh: float = 0.95
    sin_theta_thresh: float = 0.2
    cos_gamma_hi: float = 0.9
    sin_gamma_thresh: float = 0.2
    enabled: bool = True
    strict_paper_constraints: bool = False  # printed second branch (never satisfiable)
    entry_rule: EntryRule = EntryRule.CONSTRAINTS
    equilibrium_fraction: float = 0.05  # |G| below this share of m_c g b counts as near equilibrium

    def __post_init__(self) -> None:
        for name in ("cos_theta_thresh", "sin_theta_thresh", "cos_gamma_hi", "sin_gamma_thresh"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise InvalidParameterError("%s must lie in (0, 1]" % name, parameter=name, value=value)
        for name in ("eta_theta", "eta_gamma", "equilibrium_fraction"):
            value = getattr(self, name)
            if not value > 0:
                raise InvalidParameterError("%s must be > 0" % name, parameter=name, value=value)
        object.__setattr__(self, "entry_rule", EntryRule(self.entry_rule))


DEFAULT_CONTROLLER = ControllerConfig()


def entry_branches(
    state: State, cfg: ControllerConfig = DEFAULT_CONTROLLER, *, strict: bool = False
) -> tuple[bool, bool]:
    """Truth of each branch of the entry condition (rate signs included in both)."""
    if not (state.theta_dot >= 0 and state.gamma_dot <= 0):
        return False, False
    ct, st = math.cos(state.theta), math.sin(state.theta)
    cg, sg = math.cos(state.gamma), math.sin(state.gamma)
    first = (
        ct <= -cfg.cos_theta_thresh
        and st >= -cfg.sin_theta_thresh
        and cg >= cfg.cos_gamma_hi
        and sg <= cfg.sin_gamma_thresh
    )
    if strict:
        gamma_ok = cg <= -cfg.cos_gamma_hi and cg >= -cfg.sin_gamma_thresh
    else:
        gamma_ok = cg <= -cfg.cos_gamma_hi and abs(sg) <= cfg.sin_gamma_thresh
    second = ct >= cfg.cos_theta_thresh and st <= cfg.sin_theta_thresh and gamma_ok
    return first, second


def gb_entry_condition(
    state: State, *, strict: bool = False, cfg: ControllerConfig = DEFAULT_CONTROLLER
) -> bool:
    first, second = entry_branches(state, cfg, strict=strict)
    return first or second


def gb_crossing_condition(state: State, cfg: ControllerConfig = DEFAULT_CONTROLLER) -> bool:
    """Core is away from both pipe junctions."""
    return abs(math.cos(abs(state.gamma))) <= cfg.cos_gamma_hi


def gb_crossing_condition_printed(state: State, cfg: ControllerConfig = DEFAULT_CONTROLLER) -> bool:
    """Two-branch form over the sign of sin|gamma|; equivalent to gb_crossing_condition."""
    c = abs(math.cos(abs(state.gamma)))
    s = math.sin(abs(state.gamma))
    return (c <= cfg.cos_gamma_hi and s <= 0) or (c <= cfg.cos_gamma_hi and s >= 0)


def junction_half_width(cfg: ControllerConfig = DEFAULT_CONTROLLER) -> float:
    """Half-width (rad) of the zone about each pipe junction where the crossing test fails."""
    return math.acos(cfg.cos_gamma_hi)


def gb_pass_complete(state: State, entry_gamma: float, cfg: ControllerConfig = DEFAULT_CONTROLLER) -> bool:
    """
    Whether a core that entered the gravity breaker at entry_gamma may leave it now.

    The pipes only meet at the junctions, so the core leaves inside a junction zone: after
    travelling at least the gap between two zones, or after turning back toward its entry.
    """
    if gb_crossing_condition(state, cfg):
        return False
    travelled = state.gamma - entry_gamma
    if abs(travelled) >= math.pi - 2.0 * junction_half_width(cfg):
        return True
    return travelled * state.gamma_dot < 0


@dataclass(frozen=True)
class GbWindow:
    """gamma in (lo, hi], theta in [lo, hi] for one k."""

    k: int
    gamma_window: tuple[float, float]
    theta_window: tuple[float, float]

    def contains(self, state: State) -> bool:
        g_lo, g_hi = self.gamma_window
        t_lo, t_hi = self.theta_window
        return g_lo < state.gamma <= g_hi and t_lo <= state.theta <= t_hi


def gb_window(k: int, cfg: ControllerConfig = DEFAULT_CONTROLLER) -> GbWindow:
    pi = math.pi
    half_gamma = pi / cfg.eta_gamma
    eta = cfg.eta_theta
    return GbWindow(
        k=k,
        gamma_window=(-k * pi - half_gamma, -k * pi + half_gamma),
        theta_window=(k * pi + (eta * pi - pi) / eta, k * pi + (eta * pi + pi) / eta),
    )


def in_gb_window(state: State, cfg: ControllerConfig = DEFAULT_CONTROLLER) -> bool:
    """Whether some integer k puts both angles inside their windows."""
    k0 = int(round(-state.gamma / math.pi))
    reach = int(math.ceil(1.0 / cfg.eta_gamma)) + 1
    return any(gb_window(k, cfg).contains(state) for k in range(k0 - reach, k0 + reach + 1))
