"""Figures for simulation runs (requires the plots extra)."""

from rollroller.viz.plots import render_series, render_trajectory_plots

__all__ = ["render_series", "render_trajectory_plots"]
