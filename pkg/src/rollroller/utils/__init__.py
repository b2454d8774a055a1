"""Small numeric helpers."""

from rollroller.utils.math import peak_to_peak, sign_changes

__all__ = ["sign_changes", "peak_to_peak"]
