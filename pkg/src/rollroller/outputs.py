"""Run artifacts on disk: trajectory CSVs, metrics JSON and sweep summaries."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, is_dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Callable

import numpy as np
import pandas as pd

from rollroller.integrator.trajectory import Sample, Trajectory

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"  # lossless for float64
DEFAULT_OUTPUT_DIR = "outputs"


def output_dir(explicit: str | Path | None = None) -> Path:
    """--out if given, else ROLLROLLER_OUTPUT_DIR, else ./outputs."""
    return Path(explicit or os.environ.get("ROLLROLLER_OUTPUT_DIR") or DEFAULT_OUTPUT_DIR)


def _json_serializable(obj: Any) -> Any:
    """Recursively convert dataclasses, enums and numpy/pandas scalars to native Python for json.dump."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return _json_serializable(asdict(obj))
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): _json_serializable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_serializable(v) for v in obj]
    if isinstance(obj, (np.integer, np.int32, np.int64)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if np.isfinite(obj) else None
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _json_serializable(obj.tolist())
    if obj is not None and not isinstance(obj, (str, bool, int)) and pd.isna(obj):
        return None
    return obj


def write_trajectory_csv(
    traj: Trajectory, path: str | Path, energy: Callable[[Sample], float] | None = None
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    traj.to_frame(energy).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info("wrote %s (%d samples)", path, len(traj))
    return path


def read_trajectory_csv(path: str | Path) -> Trajectory:
    frame = pd.read_csv(path, float_precision="round_trip")
    return Trajectory.from_frame(frame)


def write_metrics_json(metrics: Any, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    clean = _json_serializable(metrics)
    with path.open("w", encoding="utf-8") as f:
        json.dump(clean, f, indent=2)
    logger.info("wrote %s", path)
    return path


def write_summary_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info("wrote %s (%d rows)", path, len(frame))
    return path
