"""Conflict potential, conflict intensity and per-agent responsibility.

The conflict potential of a pair is the predicted overlap of their discs at
the closest encounter under constant velocity:

    CP = max(0, 1 - pdce / (s_a + s_b))

Intensity is the time integral of CP. An agent's conflict contribution at
step k is how much lower CP is than it would have been had the agent kept
its velocity from step k-1; responsibility integrates that contribution and
normalises it by the potential at the start of the interaction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from conflictbench.model import MetricsConfig, ScenarioRecording, Trajectory, require_same_grid
from conflictbench.prediction import closest_encounter_arrays


@dataclass(frozen=True)
class ConflictSeries:
    times: np.ndarray
    distance: np.ndarray
    pdce: np.ndarray
    potential: np.ndarray
    contribution_a: np.ndarray
    contribution_b: np.ndarray
    c0: float | None
    interaction_start_index: int | None

    @property
    def has_interaction(self) -> bool:
        return self.interaction_start_index is not None


@dataclass(frozen=True)
class PairVerdict:
    agent_a: str
    agent_b: str
    intensity: float
    responsibility_a: float
    responsibility_b: float
    interacting: bool


@dataclass(frozen=True)
class PairwiseAggregate:
    mean_intensity: float | None
    mean_ego_responsibility: float | None
    verdicts: tuple[PairVerdict, ...]


def _potential(r: np.ndarray, v: np.ndarray, s_sum: float) -> np.ndarray:
    pdce, _ = closest_encounter_arrays(r, v)
    return np.maximum(0.0, 1.0 - pdce / s_sum)


def conflict_potential(r: Sequence[float], v: Sequence[float], s_sum: float) -> float:
    if s_sum <= 0:
        raise ValueError(f"s_sum must be > 0, got {s_sum}")
    return float(_potential(np.asarray(r, dtype=float), np.asarray(v, dtype=float), s_sum))


def conflict_series(a: Trajectory, b: Trajectory, cfg: MetricsConfig = MetricsConfig()) -> ConflictSeries:
    require_same_grid(a, b)
    s_sum = a.radius + b.radius
    r = b.positions - a.positions
    va, vb = a.velocities, b.velocities
    pdce, _ = closest_encounter_arrays(r, vb - va)
    potential = np.maximum(0.0, 1.0 - pdce / s_sum)

    contribution_a = np.zeros_like(potential)
    contribution_b = np.zeros_like(potential)
    # Counterfactual: the agent keeps its previous velocity, everything else as recorded.
    contribution_a[1:] = _potential(r[1:], vb[1:] - va[:-1], s_sum) - potential[1:]
    contribution_b[1:] = _potential(r[1:], vb[:-1] - va[1:], s_sum) - potential[1:]

    above = np.flatnonzero(potential > cfg.conflict_start_threshold)
    start = int(above[0]) if above.size else None
    return ConflictSeries(
        times=a.times,
        distance=np.hypot(r[:, 0], r[:, 1]),
        pdce=pdce,
        potential=potential,
        contribution_a=contribution_a,
        contribution_b=contribution_b,
        c0=float(potential[start]) if start is not None else None,
        interaction_start_index=start,
    )


def intensity(series: ConflictSeries, dt: float) -> float:
    """Trapezoidal time integral of the conflict potential over the whole series."""
    return float(np.trapezoid(series.potential, dx=dt))


def responsibility(series: ConflictSeries, dt: float) -> tuple[float, float]:
    """Normalised integrated conflict contribution of each agent.

    Contributions are per-step increments of CP, so they are integrated as
    rates (increment / dt); the result does not depend on the step size and
    an agent that alone removes the whole initial conflict scores about 1.
    Pairs without an interaction return (0, 0).
    """
    if not series.has_interaction:
        return 0.0, 0.0
    k0 = series.interaction_start_index

    def share(contribution: np.ndarray) -> float:
        rate = contribution[k0:] / dt
        if rate.size < 2:
            return 0.0
        return float(np.trapezoid(rate, dx=dt) / series.c0)

    return share(series.contribution_a), share(series.contribution_b)


def pair_verdict(a: Trajectory, b: Trajectory, cfg: MetricsConfig = MetricsConfig()) -> PairVerdict:
    series = conflict_series(a, b, cfg)
    r_a, r_b = responsibility(series, a.dt)
    return PairVerdict(a.agent_id, b.agent_id, intensity(series, a.dt), r_a, r_b, series.has_interaction)


def aggregate_pairwise(
    recording: ScenarioRecording, ego_id: str, cfg: MetricsConfig = MetricsConfig()
) -> PairwiseAggregate:
    """Ego-versus-everyone verdicts; means only over pairs that actually interact."""
    if ego_id not in recording:
        raise KeyError(f"ego {ego_id!r} not in recording (agents: {recording.agent_ids})")
    ego = recording[ego_id]
    verdicts = tuple(pair_verdict(ego, other, cfg) for other in recording.trajectories if other.agent_id != ego_id)
    active = [v for v in verdicts if v.interacting]
    if not active:
        return PairwiseAggregate(None, None, verdicts)
    return PairwiseAggregate(
        float(np.mean([v.intensity for v in active])),
        float(np.mean([v.responsibility_a for v in active])),
        verdicts,
    )
