"""Constant-velocity projection metrics: closest encounter, time-to-collision, projected path duration.

Relative quantities follow one convention throughout: ``r = p_b - p_a`` and
``v = v_b - v_a``. Swapping the agents negates both, which leaves every
result here unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from conflictbench.model import MetricsConfig, Trajectory, Vec2, require_same_grid


@dataclass(frozen=True)
class EncounterPrediction:
    pdce: float
    ttce: float
    relative_position: Vec2
    relative_velocity: Vec2


def closest_encounter_arrays(r: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised (pdce, ttce) for stacked relative states of shape (N, 2).

    The closest approach is searched over t >= 0 only, so receding or
    co-moving pairs report their current distance.
    """
    r = np.asarray(r, dtype=float)
    v = np.asarray(v, dtype=float)
    vv = np.einsum("...i,...i->...", v, v)
    rv = np.einsum("...i,...i->...", r, v)
    with np.errstate(divide="ignore", invalid="ignore"):
        ttce = np.where(vv > 0.0, np.maximum(0.0, -rv / np.where(vv > 0.0, vv, 1.0)), 0.0)
    closest = r + v * ttce[..., None]
    pdce = np.hypot(closest[..., 0], closest[..., 1])
    return pdce, ttce


def predict_closest_encounter(r: Sequence[float], v: Sequence[float]) -> EncounterPrediction:
    r_arr = np.asarray(r, dtype=float)
    v_arr = np.asarray(v, dtype=float)
    pdce, ttce = closest_encounter_arrays(r_arr, v_arr)
    return EncounterPrediction(float(pdce), float(ttce), Vec2(*map(float, r_arr)), Vec2(*map(float, v_arr)))


def cross_product_pdce(r: Sequence[float], v: Sequence[float]) -> float:
    """Perpendicular miss distance ``|r x v| / |v|`` of the unbounded constant-velocity lines."""
    return abs(r[0] * v[1] - r[1] * v[0]) / math.hypot(v[0], v[1])


def time_to_collision(r: Sequence[float], v: Sequence[float], s_sum: float) -> float | None:
    """Earliest t >= 0 with ``|r + v t| = s_sum``; 0 when already overlapping, None when no contact."""
    if s_sum <= 0:
        raise ValueError(f"s_sum must be > 0, got {s_sum}")
    rx, ry = float(r[0]), float(r[1])
    vx, vy = float(v[0]), float(v[1])
    c = rx * rx + ry * ry - s_sum * s_sum
    if c <= 0.0:
        return 0.0
    vv = vx * vx + vy * vy
    rv = rx * vx + ry * vy
    if vv == 0.0 or rv >= 0.0:
        return None
    disc = rv * rv - vv * c
    if disc < 0.0:
        return None
    # Smaller root of vv t^2 + 2 rv t + c, written without cancellation.
    return c / (-rv + math.sqrt(disc))


def relative_state(a: Trajectory, b: Trajectory) -> tuple[np.ndarray, np.ndarray]:
    require_same_grid(a, b)
    return b.positions - a.positions, b.velocities - a.velocities


def ttc_series(a: Trajectory, b: Trajectory) -> list[float | None]:
    r, v = relative_state(a, b)
    s_sum = a.radius + b.radius
    return [time_to_collision(ri, vi, s_sum) for ri, vi in zip(r, v)]


def min_ttc(a: Trajectory, b: Trajectory) -> float | None:
    defined = [t for t in ttc_series(a, b) if t is not None]
    return min(defined) if defined else None


# -- projected path duration ------------------------------------------------


@dataclass(frozen=True)
class SafetyZone:
    """Frontal rectangle of an agent, or its footprint disc when stationary."""

    center: np.ndarray
    axis: np.ndarray | None  # unit heading; None for a disc
    half_length: float
    half_width: float

    @property
    def is_disc(self) -> bool:
        return self.axis is None

    def corners(self) -> np.ndarray:
        u = self.axis
        n = np.array([-u[1], u[0]])
        lu, wn = self.half_length * u, self.half_width * n
        return np.array([self.center + lu + wn, self.center - lu + wn, self.center - lu - wn, self.center + lu - wn])


def safety_zone(position, velocity, radius: float, cfg: MetricsConfig) -> SafetyZone:
    position = np.asarray(position, dtype=float)
    velocity = np.asarray(velocity, dtype=float)
    speed = math.hypot(velocity[0], velocity[1])
    length = speed * cfg.safety_zone_horizon
    if length == 0.0:
        return SafetyZone(position, None, radius, radius)
    u = velocity / speed
    return SafetyZone(position + 0.5 * length * u, u, 0.5 * length, 0.5 * cfg.safety_zone_width_factor * radius)


def _projected_radius(zone: SafetyZone, axis: np.ndarray) -> float:
    u = zone.axis
    n = np.array([-u[1], u[0]])
    return zone.half_length * abs(float(u @ axis)) + zone.half_width * abs(float(n @ axis))


def _rect_rect_overlap(p: SafetyZone, q: SafetyZone) -> bool:
    delta = q.center - p.center
    for zone in (p, q):
        u = zone.axis
        for axis in (u, np.array([-u[1], u[0]])):
            if abs(float(delta @ axis)) > _projected_radius(p, axis) + _projected_radius(q, axis):
                return False
    return True


def _rect_disc_overlap(rect: SafetyZone, disc: SafetyZone) -> bool:
    u = rect.axis
    n = np.array([-u[1], u[0]])
    delta = disc.center - rect.center
    along = float(np.clip(delta @ u, -rect.half_length, rect.half_length))
    across = float(np.clip(delta @ n, -rect.half_width, rect.half_width))
    nearest = rect.center + along * u + across * n
    return float(np.hypot(*(disc.center - nearest))) <= disc.half_length


def zones_overlap(p: SafetyZone, q: SafetyZone) -> bool:
    """Separating-axis test for two oriented rectangles; exact distance tests for discs."""
    if p.is_disc and q.is_disc:
        return float(np.hypot(*(q.center - p.center))) <= p.half_length + q.half_length
    if p.is_disc:
        return _rect_disc_overlap(q, p)
    if q.is_disc:
        return _rect_disc_overlap(p, q)
    return _rect_rect_overlap(p, q)


def ppd_mask(a: Trajectory, b: Trajectory, cfg: MetricsConfig = MetricsConfig()) -> np.ndarray:
    require_same_grid(a, b)
    return np.array(
        [
            zones_overlap(
                safety_zone(pa, va, a.radius, cfg),
                safety_zone(pb, vb, b.radius, cfg),
            )
            for pa, va, pb, vb in zip(a.positions, a.velocities, b.positions, b.velocities)
        ],
        dtype=bool,
    )


def projected_path_duration(a: Trajectory, b: Trajectory, cfg: MetricsConfig = MetricsConfig()) -> float:
    """Total time during which the two frontal safety zones overlap."""
    return float(np.count_nonzero(ppd_mask(a, b, cfg)) * a.dt)
