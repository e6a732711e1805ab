"""Figures for conflict series and scenario comparisons.

Figures are built on ``matplotlib.figure.Figure`` directly, so no GUI
backend is touched and the module is safe to use headless.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

from matplotlib.figure import Figure

from conflictbench.conflict import ConflictSeries
from conflictbench.model import ScenarioRecording

COLORS = {"s1": "tab:red", "s2": "tab:orange", "s3": "tab:blue", "s4": "tab:green", "cross90": "tab:purple"}


def _save(fig: Figure, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    return path


def plot_series(series: ConflictSeries, path: str | Path, labels: tuple[str, str] = ("a", "b"), title: str = "") -> Path:
    """Conflict potential and both conflict contributions over time."""
    fig = Figure(figsize=(7, 5))
    ax_cp, ax_cc = fig.subplots(2, 1, sharex=True)
    ax_cp.plot(series.times, series.potential, color="k")
    ax_cp.set_ylabel("conflict potential")
    ax_cp.set_ylim(-0.05, 1.05)
    ax_cc.plot(series.times, series.contribution_a, label=labels[0])
    ax_cc.plot(series.times, series.contribution_b, label=labels[1])
    ax_cc.set_ylabel("conflict contribution")
    ax_cc.set_xlabel("t [s]")
    ax_cc.legend(loc="upper right")
    if title:
        ax_cp.set_title(title)
    return _save(fig, path)


def plot_progression(
    runs: Mapping[str, tuple[ScenarioRecording, ConflictSeries]],
    path: str | Path,
    ego_id: str = "robot",
) -> Path:
    """Paths, conflict potential and per-agent contributions for several scenarios side by side."""
    fig = Figure(figsize=(10, 7))
    (ax_path, ax_cp), (ax_ego, ax_other) = fig.subplots(2, 2)
    for name, (recording, series) in runs.items():
        color = COLORS.get(name)
        for traj in recording.trajectories:
            style = "-" if traj.agent_id == ego_id else "--"
            ax_path.plot(traj.positions[:, 0], traj.positions[:, 1], style, color=color, lw=1)
        ax_cp.plot(series.times, series.potential, color=color, label=name)
        ax_ego.plot(series.times, series.contribution_a, color=color)
        ax_other.plot(series.times, series.contribution_b, color=color)
    ax_path.set_title("paths (solid: ego)")
    ax_path.set_aspect("equal", adjustable="datalim")
    ax_cp.set_title("conflict potential")
    ax_cp.legend(loc="upper right")
    ax_ego.set_title("conflict contribution, ego")
    ax_other.set_title("conflict contribution, other")
    for ax in (ax_cp, ax_ego, ax_other):
        ax.set_xlabel("t [s]")
    fig.tight_layout()
    return _save(fig, path)
