"""Distance-based pairwise metrics: clearing distance, space violation rate, collision index."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from conflictbench.model import MetricsConfig, Trajectory, require_same_grid


@dataclass(frozen=True)
class Encounter:
    start_index: int
    end_index: int
    min_distance: float
    min_distance_time: float


@dataclass(frozen=True)
class ClearingDistance:
    cd_avg: float | None
    cd_max: float | None
    encounters: tuple[Encounter, ...]


def center_distance_series(a: Trajectory, b: Trajectory) -> np.ndarray:
    require_same_grid(a, b)
    diff = b.positions - a.positions
    return np.hypot(diff[:, 0], diff[:, 1])


def _runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Inclusive (start, end) index pairs of maximal True runs."""
    padded = np.concatenate(([False], mask, [False])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1) - 1
    return list(zip(starts.tolist(), ends.tolist()))


def clearing_distance(a: Trajectory, b: Trajectory, cfg: MetricsConfig = MetricsConfig()) -> ClearingDistance:
    """Minimum distance per encounter, averaged and maxed over encounters.

    An encounter is a maximal run of samples closer than the sensing range.
    With no encounter the averages are ``None`` rather than 0.
    """
    dist = center_distance_series(a, b)
    encounters = []
    for start, end in _runs(dist < cfg.encounter_sensing_range):
        k = start + int(np.argmin(dist[start : end + 1]))
        encounters.append(Encounter(start, end, float(dist[k]), float(a.times[k])))
    if not encounters:
        return ClearingDistance(None, None, ())
    minima = [e.min_distance for e in encounters]
    return ClearingDistance(float(np.mean(minima)), float(np.max(minima)), tuple(encounters))


def space_violation_rate(a: Trajectory, b: Trajectory, cfg: MetricsConfig = MetricsConfig()) -> float:
    dist = center_distance_series(a, b)
    return float(np.count_nonzero(dist < cfg.personal_space_radius) / dist.size)


def collision_index(a: Trajectory, b: Trajectory, cfg: MetricsConfig = MetricsConfig()) -> float:
    """Peak Gaussian proximity ``exp(-d^2 / (2 sigma^2))`` over the recording."""
    dist = center_distance_series(a, b)
    d_min = float(dist.min())
    return float(np.exp(-(d_min**2) / (2.0 * cfg.ci_sigma**2)))
