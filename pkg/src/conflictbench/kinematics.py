"""Speed, acceleration and jerk statistics of a single trajectory."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from conflictbench.model import Trajectory, TrajectoryError


@dataclass(frozen=True)
class KinematicSummary:
    v_min: float
    v_avg: float
    v_max: float
    a_min: float
    a_avg: float
    a_max: float
    j_min: float
    j_avg: float
    j_max: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def _central_difference(values: np.ndarray, dt: float) -> np.ndarray:
    # Interior points only: result[k] belongs to values[k + 1].
    return (values[2:] - values[:-2]) / (2.0 * dt)


def _stats(values: np.ndarray) -> tuple[float, float, float]:
    return float(values.min()), float(values.mean()), float(values.max())


def kinematic_summary(traj: Trajectory) -> KinematicSummary:
    """Min/avg/max of speed, acceleration magnitude and jerk magnitude.

    Acceleration and jerk are magnitudes of central differences of the
    velocity vector, so turning at constant speed still counts. Statistics
    only use samples where the stencil is complete: speed over all samples,
    acceleration over samples 1..N-2 and jerk over samples 2..N-3.
    """
    if len(traj) < 4:
        raise TrajectoryError(f"kinematic summary needs >= 4 samples, got {len(traj)}")
    vel = traj.velocities
    acc = _central_difference(vel, traj.dt)
    jerk = _central_difference(acc, traj.dt)
    speed = np.hypot(vel[:, 0], vel[:, 1])
    acc_mag = np.hypot(acc[:, 0], acc[:, 1])
    jerk_mag = np.hypot(jerk[:, 0], jerk[:, 1])
    if jerk_mag.size == 0:
        # 4 samples: the jerk stencil collapses; use the one-sided difference of the two accelerations.
        step = (acc[1:] - acc[:-1]) / traj.dt
        jerk_mag = np.hypot(step[:, 0], step[:, 1])
    return KinematicSummary(*_stats(speed), *_stats(acc_mag), *_stats(jerk_mag))


def active_span(traj: Trajectory, min_samples: int = 4) -> Trajectory:
    """Drop the trailing dwell where the agent stands still until the end.

    A recorded agent that reaches its goal holds position with zero velocity;
    the stop itself is not part of the motion being judged. Fully stationary
    trajectories are returned unchanged.
    """
    moving = np.flatnonzero(traj.speeds() > 0.0)
    if moving.size == 0:
        return traj
    n = max(int(moving[-1]) + 1, min_samples)
    return traj if n >= len(traj) else traj.head(n)
