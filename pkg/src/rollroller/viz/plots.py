"""
SVG figures of a run: sphere angle, sphere rate and core rate against time.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from rollroller.integrator.trajectory import Trajectory  # noqa: E402

PANELS = {
    "theta": ("theta (rad)", "theta.svg"),
    "theta_dot": ("theta_dot (rad/s)", "theta_dot.svg"),
    "gamma_dot": ("gamma_dot (rad/s)", "gamma_dot.svg"),
}


def render_series(
    trajectories: Mapping[str, Trajectory],
    column: str,
    outpath: str = "outputs/theta.svg",
    title: str | None = None,
) -> str:
    """One line per trajectory; GB exits of each are marked on the curve."""
    path = Path(outpath)
    path.parent.mkdir(parents=True, exist_ok=True)
    ylabel = PANELS[column][0] if column in PANELS else column
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for label, traj in trajectories.items():
        t = traj.times()
        ax.plot(t, traj.column(column), linewidth=1.2, label=label)
        jumps = traj.jump_events()
        if jumps:
            ax.scatter(
                [e.t for e in jumps], [getattr(e.state, column) for e in jumps], s=14, marker="x", zorder=3
            )
    ax.set_xlabel("t (s)")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    if len(trajectories) > 1:
        ax.legend(fontsize=8)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
    return str(path.resolve())


def render_trajectory_plots(
    trajectories: Mapping[str, Trajectory], outdir: str | Path, title: str | None = None
) -> list[str]:
    """theta.svg, theta_dot.svg and gamma_dot.svg under outdir."""
    outdir = Path(outdir)
    return [
        render_series(trajectories, column, str(outdir / filename), title=title)
        for column, (_, filename) in PANELS.items()
    ]
