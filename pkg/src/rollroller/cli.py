"""
Command-line interface.

Usage:
  rollroller run --scenario forward --out outputs/forward --emit csv,json,plot
  rollroller sweep --scenario case3 --grid=-6.28,-3.14,0,3.14,6.28
  rollroller validate --config configs/table3.yaml --oracle 1000
  rollroller compare outputs/a/trajectory.csv outputs/b/trajectory.csv --t-eval 10
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import re
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from rollroller.config import (
    DEFAULT_CONFIG,
    ENV_LOG_LEVEL,
    SimConfig,
    apply_env_overrides,
    config_to_dict,
    load_config,
)
from rollroller.dynamics.eom import DynamicsBackend, DynamicsOptions, PotentialConvention
from rollroller.errors import ConfigError, RollRollerError
from rollroller.hydraulics.forces import actuation_feasible, max_required_force, transmitted_force
from rollroller.model.params import tt_core_mass_bounds, tt_mass_valid, validate_mass_ratio
from rollroller.outputs import (
    output_dir,
    read_trajectory_csv,
    write_metrics_json,
    write_summary_csv,
    write_trajectory_csv,
)
from rollroller.scenarios.library import BUILTIN_SCENARIOS, ScenarioOutcome, run_custom
from rollroller.scenarios.metrics import offset_metric
from rollroller.scenarios.spec import ScenarioSpec, spec_from_config

logger = logging.getLogger(__name__)

EMIT_CHOICES = ("csv", "json", "plot")
SWEEPABLE = ("case1", "case2", "case3", "mass-sweep")


def _load_dotenv() -> None:
    try:
        from dotenv import load_dotenv

        load_dotenv()
    except ImportError:
        pass


def _parse_emit(text: str) -> set[str]:
    emit = {part.strip() for part in text.split(",") if part.strip()}
    unknown = emit - set(EMIT_CHOICES)
    if unknown:
        raise ConfigError("unknown --emit value(s): %s" % ", ".join(sorted(unknown)), key="emit")
    return emit


def _parse_grid(text: str | None) -> list[float] | None:
    if text is None:
        return None
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ConfigError("--grid must be comma-separated numbers: %s" % e, key="grid") from e


def resolve_config(args: argparse.Namespace) -> SimConfig:
    """Defaults, then --config, then ROLLROLLER_* env, then command-line flags."""
    cfg = load_config(args.config) if getattr(args, "config", None) else DEFAULT_CONFIG
    cfg = apply_env_overrides(cfg)
    backend = getattr(args, "backend", None)
    potential = getattr(args, "potential", None)
    if backend or potential:
        cfg = replace(
            cfg,
            dynamics=DynamicsOptions(
                backend=DynamicsBackend(backend or cfg.dynamics.backend),
                potential=PotentialConvention(potential or cfg.dynamics.potential),
            ),
        )
    if getattr(args, "strict_paper_constraints", False):
        cfg = replace(cfg, controller=replace(cfg.controller, strict_paper_constraints=True))
    return cfg


def _run_stamp(payload: dict) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha1(text.encode("utf-8")).hexdigest()


def _scenario_spec(args: argparse.Namespace, cfg: SimConfig) -> ScenarioSpec | None:
    """Spec for a file-defined scenario (or the config's own scenario block); None for built-ins."""
    if args.scenario in BUILTIN_SCENARIOS:
        return None
    if args.scenario:
        path = Path(args.scenario)
        if not path.exists():
            raise ConfigError(
                "unknown scenario %r (built-ins: %s)" % (args.scenario, ", ".join(BUILTIN_SCENARIOS)),
                key="scenario",
            )
        spec = spec_from_config(load_config(path, base=cfg), default_name=path.stem)
    elif cfg.scenario:
        spec = spec_from_config(cfg)
    else:
        raise ConfigError("no scenario given: pass --scenario or a config with a scenario block", key="scenario")
    if args.t_end is not None:
        spec = replace(spec, t_end=args.t_end)
    return spec


def _execute(
    args: argparse.Namespace, cfg: SimConfig, grid: list[float] | None
) -> tuple[str, str, ScenarioOutcome]:
    spec = _scenario_spec(args, cfg)
    if spec is not None:
        if grid is not None:
            if spec.sweep is None:
                raise ConfigError("--grid needs a scenario with a sweep block", key="grid")
            if not grid:
                raise ConfigError("sweep grid is empty", key="grid")
            spec = replace(spec, sweep=replace(spec.sweep, values=tuple(grid)))
        return spec.name, spec.stamp(), run_custom(spec)

    name = args.scenario
    if grid is None and cfg.sweep.grid and name in SWEEPABLE:
        grid = list(cfg.sweep.grid)
    if grid is not None and name not in SWEEPABLE:
        raise ConfigError("scenario %r does not take a grid" % name, key="grid")
    stamp = _run_stamp({"scenario": name, "config": config_to_dict(cfg), "grid": grid, "t_end": args.t_end})
    logger.info("running %s (stamp %s)", name, stamp[:12])
    return name, stamp, BUILTIN_SCENARIOS[name](cfg, grid, args.t_end)


def _safe_label(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.=+-]", "_", label)


def _write_outcome(name: str, stamp: str, outcome: ScenarioOutcome, out: Path, emit: set[str]) -> None:
    if "csv" in emit:
        primary = outcome.primary
        write_trajectory_csv(primary.trajectory, out / "trajectory.csv", energy=primary.energy)
        if len(outcome.runs) > 1:
            for label, run in outcome.runs.items():
                write_trajectory_csv(run.trajectory, out / ("trajectory_%s.csv" % _safe_label(label)), energy=run.energy)
    if "json" in emit:
        write_metrics_json({"scenario": name, "run_stamp": stamp, **outcome.metrics}, out / "metrics.json")
    if "plot" in emit:
        from rollroller.viz.plots import render_trajectory_plots

        render_trajectory_plots({k: r.trajectory for k, r in outcome.runs.items()}, out, title=name)


def cmd_run(args: argparse.Namespace) -> int:
    """Simulate one scenario and write its artifacts."""
    cfg = resolve_config(args)
    emit = _parse_emit(args.emit)
    out = output_dir(args.out)
    name, stamp, outcome = _execute(args, cfg, None)
    _write_outcome(name, stamp, outcome, out, emit)
    if outcome.summary is not None and "csv" in emit:
        write_summary_csv(outcome.summary, out / "summary.csv")
    print("%s: wrote %s (stamp %s)" % (name, out, stamp[:12]))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    """Run a sweepable scenario over its grid and write summary.csv."""
    cfg = resolve_config(args)
    out = output_dir(args.out)
    grid = _parse_grid(args.grid)
    if grid is not None and not grid:
        raise ConfigError("sweep grid is empty", key="grid")
    if args.scenario in BUILTIN_SCENARIOS and args.scenario not in SWEEPABLE:
        raise ConfigError("scenario %r is not a sweep (choose from %s)" % (args.scenario, ", ".join(SWEEPABLE)), key="scenario")
    name, stamp, outcome = _execute(args, cfg, grid)
    if outcome.summary is None:
        raise ConfigError("scenario %r has no sweep block" % name, key="scenario.sweep")
    write_summary_csv(outcome.summary, out / "summary.csv")
    write_metrics_json({"scenario": name, "run_stamp": stamp, **outcome.metrics}, out / "metrics.json")
    print(outcome.summary.to_string(index=False))
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    """Check the mass-ratio, actuation and turner-tube gates; exit 0 iff all pass."""
    cfg = resolve_config(args)
    p = cfg.params
    h = p.hydraulics
    lo, hi = tt_core_mass_bounds(p.masses.M_s, p.masses.delta)
    checks = [
        (
            "mass-ratio",
            validate_mass_ratio(p.masses.m_c, p.masses.M_s),
            "1/10 <= m_c/M_s < 1/3 (m*=%.4f)" % p.masses.m_star,
        ),
        (
            "actuation",
            actuation_feasible(h, p.g),
            "F_T=%.4g N > F_max=%.4g N" % (transmitted_force(h), max_required_force(h, p.g)),
        ),
        (
            "turner-tube",
            tt_mass_valid(p.masses),
            "%.4g <= m_c_TT=%.4g < %.4g kg" % (lo, p.masses.m_c_TT, hi),
        ),
    ]
    for name, ok, detail in checks:
        print("%s %-12s %s" % ("PASS" if ok else "FAIL", name, detail))

    if args.oracle:
        from rollroller.dynamics.oracle import oracle_report, summarize_report

        out = output_dir(args.out)
        frame = oracle_report(p, n_states=args.oracle, options=cfg.dynamics)
        summary = summarize_report(frame)
        write_summary_csv(frame, out / "backend_diff.csv")
        write_metrics_json(summary, out / "backend_diff_summary.json")
        print("oracle: derived max rel err %.3g, paper median rel err %.3g"
              % (summary["derived_max_rel_err"], summary["paper_median_rel_err"]))
    return 0 if all(ok for _, ok, _ in checks) else 1


def cmd_compare(args: argparse.Namespace) -> int:
    """Offset |theta_A| - |theta_B| between two trajectory CSVs."""
    try:
        traj_a = read_trajectory_csv(args.trajectory_a)
        traj_b = read_trajectory_csv(args.trajectory_b)
    except (KeyError, ValueError) as e:
        if isinstance(e, RollRollerError):
            raise
        raise ConfigError("not a trajectory CSV: %s" % e, key="trajectory") from e
    t_eval = args.t_eval
    if t_eval is None:
        t_eval = min(traj_a.span[1], traj_b.span[1])
    offset = offset_metric(traj_a, traj_b, t_eval)
    print("offset at t=%.6g: %.6f rad" % (t_eval, offset))
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="YAML/JSON config file")
    p.add_argument("--out", default=None, help="Output directory (default: $ROLLROLLER_OUTPUT_DIR or outputs)")
    p.add_argument("--backend", choices=[b.value for b in DynamicsBackend], default=None)
    p.add_argument("--potential", choices=[c.value for c in PotentialConvention], default=None)
    p.add_argument("--strict-paper-constraints", action="store_true", help="Use the printed second entry branch")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rollroller", description="Spherical rolling robot simulator")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (default: $ROLLROLLER_LOG_LEVEL or INFO)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="Simulate a scenario")
    p_run.add_argument("--scenario", default=None, help="Built-in name (%s) or spec file" % ", ".join(BUILTIN_SCENARIOS))
    p_run.add_argument("--emit", default="csv,json", help="Comma list of csv, json, plot")
    p_run.add_argument("--t-end", type=float, default=None)
    _add_common(p_run)

    p_sweep = sub.add_parser("sweep", help="Sweep a scenario over a grid")
    p_sweep.add_argument("--scenario", default=None, help="case1, case2, case3, mass-sweep or a spec file with a sweep block")
    p_sweep.add_argument("--grid", default=None, help="Comma-separated grid values")
    p_sweep.add_argument("--t-end", type=float, default=None)
    _add_common(p_sweep)

    p_val = sub.add_parser("validate", help="Check the design gates")
    p_val.add_argument("--oracle", type=int, default=0, metavar="N", help="Also compare backends on N random states")
    _add_common(p_val)

    p_cmp = sub.add_parser("compare", help="Offset between two trajectory CSVs")
    p_cmp.add_argument("trajectory_a")
    p_cmp.add_argument("trajectory_b")
    p_cmp.add_argument("--t-eval", type=float, default=None)
    return parser


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "validate": cmd_validate, "compare": cmd_compare}


def main(argv: Sequence[str] | None = None) -> int:
    _load_dotenv()
    args = build_parser().parse_args(argv)
    level = (args.log_level or os.environ.get(ENV_LOG_LEVEL) or "INFO").upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), format="%(levelname)s %(name)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (RollRollerError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
