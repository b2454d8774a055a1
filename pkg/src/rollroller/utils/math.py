"""Math utilities for trajectories (sign changes, peak-to-peak)."""

import numpy as np


def sign_changes(values: np.ndarray, tol: float = 0.0) -> int:
    """Number of strict sign flips, ignoring entries with |v| <= tol."""
    arr = np.asarray(values, dtype=float)
    signs = np.sign(arr[np.abs(arr) > tol])
    if signs.size < 2:
        return 0
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def peak_to_peak(values: np.ndarray) -> float:
    arr = np.asarray(values, dtype=float)
    return float(arr.max() - arr.min()) if arr.size else 0.0
