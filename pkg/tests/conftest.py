"""Pytest conftest: ensure src is on path for rollroller imports, plus shared parameter fixtures."""

import sys
from pathlib import Path

import pytest

src = Path(__file__).resolve().parent.parent / "src"
if str(src) not in sys.path:
    sys.path.insert(0, str(src))

from rollroller.model.params import RobotParams, default_params  # noqa: E402

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def params() -> RobotParams:
    """Published parameter set (inertias derived, no reconciliation warnings)."""
    return default_params()


@pytest.fixture
def frictionless(params: RobotParams) -> RobotParams:
    """Published parameters with every viscous coefficient set to zero."""
    return params.with_overrides(zeta_theta=0.0, zeta_gamma_MM=0.0, zeta_gamma_GB=0.0)


@pytest.fixture
def table3_path() -> Path:
    return REPO_ROOT / "configs" / "table3.yaml"
