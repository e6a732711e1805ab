"""Trajectory data model shared by the metric, simulation and harness modules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

GRID_TOLERANCE = 1e-9  # seconds
MAX_SPEED = 100.0  # m/s, sanity bound on stored samples


class TrajectoryError(ValueError):
    """Raised when trajectory data violates the model invariants."""


class GridError(TrajectoryError):
    """Raised for non-uniform or mismatched time grids."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class Vec2(NamedTuple):
    x: float
    y: float

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x, self.y], dtype=dtype or float)


def as_vec(value: Sequence[float]) -> np.ndarray:
    """Coerce a 2-sequence to a float array, rejecting NaN/Inf."""
    arr = np.asarray(value, dtype=float)
    if arr.shape != (2,):
        raise TrajectoryError(f"expected a 2-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise TrajectoryError(f"non-finite vector component: {arr}")
    return arr


@dataclass(frozen=True)
class AgentSample:
    t: float
    position: Vec2
    velocity: Vec2

    def __post_init__(self):
        if not math.isfinite(self.t) or self.t < 0:
            raise TrajectoryError(f"sample time must be finite and >= 0, got {self.t}")
        pos = as_vec(self.position)
        vel = as_vec(self.velocity)
        if math.hypot(*vel) >= MAX_SPEED:
            raise TrajectoryError(f"speed {math.hypot(*vel):.3g} m/s exceeds sanity bound")
        object.__setattr__(self, "position", Vec2(*map(float, pos)))
        object.__setattr__(self, "velocity", Vec2(*map(float, vel)))


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


def check_uniform_grid(times: np.ndarray, dt: float | None = None) -> float:
    """Return the grid step of ``times``; raise GridError on the first irregular step."""
    times = np.asarray(times, dtype=float)
    if times.size < 2:
        raise TrajectoryError("at least 2 samples are required")
    if dt is None:
        dt = float(times[1] - times[0])
    if not dt > 0:
        raise GridError("time grid must be strictly increasing", index=1)
    expected = times[0] + dt * np.arange(times.size)
    bad = np.flatnonzero(np.abs(times - expected) > GRID_TOLERANCE)
    if bad.size:
        k = int(bad[0])
        raise GridError(
            f"non-uniform time grid at index {k}: t={times[k]!r}, expected {expected[k]!r}",
            index=k,
        )
    return float(dt)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Time-ordered samples of one circular agent on a uniform grid.

    Samples are held column-wise as read-only arrays: ``times`` (N,),
    ``positions`` (N, 2) and ``velocities`` (N, 2).
    """

    agent_id: str
    radius: float
    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    dt: float = field(init=False)

    def __post_init__(self):
        times = _frozen(self.times)
        pos = _frozen(self.positions)
        vel = _frozen(self.velocities)
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise TrajectoryError(f"radius must be > 0, got {self.radius}")
        n = times.shape[0]
        if times.ndim != 1 or pos.shape != (n, 2) or vel.shape != (n, 2):
            raise TrajectoryError(
                f"shape mismatch: times {times.shape}, positions {pos.shape}, velocities {vel.shape}"
            )
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(pos)) and np.all(np.isfinite(vel))):
            raise TrajectoryError(f"agent {self.agent_id!r}: non-finite sample values")
        if times[0] < 0:
            raise TrajectoryError("sample times must be >= 0")
        if np.any(np.hypot(vel[:, 0], vel[:, 1]) >= MAX_SPEED):
            raise TrajectoryError(f"agent {self.agent_id!r}: speed exceeds sanity bound")
        dt = check_uniform_grid(times)
        object.__setattr__(self, "agent_id", str(self.agent_id))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "velocities", vel)
        object.__setattr__(self, "dt", dt)

    @classmethod
    def from_samples(cls, agent_id: str, radius: float, samples: Sequence[AgentSample]) -> "Trajectory":
        return cls(
            agent_id,
            radius,
            [s.t for s in samples],
            [s.position for s in samples],
            [s.velocity for s in samples],
        )

    def __len__(self) -> int:
        return self.times.shape[0]

    @property
    def samples(self) -> list[AgentSample]:
        return [
            AgentSample(float(t), Vec2(*p), Vec2(*v))
            for t, p, v in zip(self.times, self.positions, self.velocities)
        ]

    def speeds(self) -> np.ndarray:
        return np.hypot(self.velocities[:, 0], self.velocities[:, 1])

    def same_grid(self, other: "Trajectory") -> bool:
        return (
            len(self) == len(other)
            and abs(self.times[0] - other.times[0]) <= GRID_TOLERANCE
            and abs(self.dt - other.dt) <= GRID_TOLERANCE
        )

    def head(self, n: int) -> "Trajectory":
        """The first ``n`` samples as a new trajectory."""
        return Trajectory(self.agent_id, self.radius, self.times[:n], self.positions[:n], self.velocities[:n])


def require_same_grid(a: Trajectory, b: Trajectory) -> None:
    if not a.same_grid(b):
        raise GridError(
            f"agents {a.agent_id!r} and {b.agent_id!r} are not on the same time grid "
            f"(n={len(a)}/{len(b)}, t0={a.times[0]}/{b.times[0]}, dt={a.dt}/{b.dt})"
        )


@dataclass(frozen=True, eq=False)
class ScenarioRecording:
    trajectories: tuple[Trajectory, ...]
    name: str = "recording"
    truncated: bool = False

    def __post_init__(self):
        trajs = tuple(self.trajectories)
        if len(trajs) < 2:
            raise TrajectoryError("a recording needs at least 2 trajectories")
        ids = [t.agent_id for t in trajs]
        if len(set(ids)) != len(ids):
            raise TrajectoryError(f"duplicate agent ids: {ids}")
        for other in trajs[1:]:
            require_same_grid(trajs[0], other)
        object.__setattr__(self, "trajectories", trajs)

    @property
    def dt(self) -> float:
        return self.trajectories[0].dt

    @property
    def times(self) -> np.ndarray:
        return self.trajectories[0].times

    @property
    def duration(self) -> float:
        times = self.times
        return float(times[-1] - times[0])

    @property
    def agent_ids(self) -> list[str]:
        return [t.agent_id for t in self.trajectories]

    def __getitem__(self, agent_id: str) -> Trajectory:
        for traj in self.trajectories:
            if traj.agent_id == agent_id:
                return traj
        raise KeyError(f"no agent {agent_id!r} in recording {self.name!r}")

    def __contains__(self, agent_id: str) -> bool:
        return agent_id in self.agent_ids


@dataclass(frozen=True)
class MetricsConfig:
    agent_radius_default: float = 0.5
    personal_space_radius: float = 1.2
    ci_sigma: float = 0.45
    safety_zone_horizon: float = 3.0
    safety_zone_width_factor: float = 3.0
    encounter_sensing_range: float = 10.0
    conflict_start_threshold: float = 0.0
    dt_default: float = 0.1

    def __post_init__(self):
        for name in (
            "agent_radius_default",
            "personal_space_radius",
            "ci_sigma",
            "safety_zone_horizon",
            "safety_zone_width_factor",
            "encounter_sensing_range",
            "dt_default",
        ):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"MetricsConfig.{name} must be > 0, got {value}")
        if not 0.0 <= self.conflict_start_threshold < 1.0:
            raise ValueError(
                f"conflict_start_threshold must lie in [0, 1), got {self.conflict_start_threshold}"
            )


def resample_velocities(
    agent_id: str,
    positions: Sequence[tuple[float, Sequence[float]]],
    dt: float,
    radius: float = MetricsConfig.agent_radius_default,
) -> Trajectory:
    """Build a trajectory from (t, position) pairs using forward differences.

    The last sample repeats the previous velocity. Raises GridError naming
    the first offending index when the timestamps are not spaced by ``dt``.
    """
    if len(positions) < 2:
        raise TrajectoryError("at least 2 position samples are required")
    times = np.array([t for t, _ in positions], dtype=float)
    pos = np.array([as_vec(p) for _, p in positions])
    check_uniform_grid(times, dt)
    vel = np.empty_like(pos)
    vel[:-1] = (pos[1:] - pos[:-1]) / dt
    vel[-1] = vel[-2]
    return Trajectory(agent_id, radius, times, pos, vel)
