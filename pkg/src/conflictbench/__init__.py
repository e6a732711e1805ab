"""Interaction metrics for social robot navigation.

Conflict intensity and per-agent responsibility, ten baseline metrics
(kinematics, clearing distance, space violation, collision index, TTC,
projected path duration) and a two-agent social-force simulator for the
head-on compliance scenarios.
"""

from conflictbench.conflict import (
    ConflictSeries,
    PairVerdict,
    aggregate_pairwise,
    conflict_potential,
    conflict_series,
    intensity,
    responsibility,
)
from conflictbench.model import MetricsConfig, ScenarioRecording, Trajectory, Vec2, resample_velocities
from conflictbench.report import MetricReport, evaluate, export_series
from conflictbench.sim import AgentSpec, Planner, SimConfig, SocialForceParams, run_scenario

__version__ = "0.1.0"

__all__ = [
    "AgentSpec",
    "ConflictSeries",
    "MetricReport",
    "MetricsConfig",
    "PairVerdict",
    "Planner",
    "ScenarioRecording",
    "SimConfig",
    "SocialForceParams",
    "Trajectory",
    "Vec2",
    "aggregate_pairwise",
    "conflict_potential",
    "conflict_series",
    "evaluate",
    "export_series",
    "intensity",
    "resample_velocities",
    "responsibility",
    "run_scenario",
]
