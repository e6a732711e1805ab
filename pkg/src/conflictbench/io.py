"""Trajectory CSV, conflict-series CSV and JSON configuration files.

Trajectory CSV: header ``t,agent_id,x,y[,vx,vy]``, one row per agent and
time step. Numbers are written with 17 significant digits so doubles survive
a write/read cycle bit for bit.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import asdict, fields
from pathlib import Path
from typing import Any, TextIO

import numpy as np

from conflictbench.conflict import ConflictSeries
from conflictbench.model import (
    GridError,
    MetricsConfig,
    ScenarioRecording,
    Trajectory,
    TrajectoryError,
    check_uniform_grid,
    resample_velocities,
)
from conflictbench.sim import SimConfig, SocialForceParams

log = logging.getLogger(__name__)

TRAJECTORY_COLUMNS = ("t", "agent_id", "x", "y", "vx", "vy")
SERIES_COLUMNS = ("t", "distance", "pdce", "conflict_potential", "contribution_a", "contribution_b")


class FormatError(ValueError):
    """Malformed input file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def fmt(value: float) -> str:
    return format(float(value), ".17g")


# -- trajectories -----------------------------------------------------------


def write_recording(recording: ScenarioRecording, dest: str | Path | TextIO) -> None:
    """Write rows ordered by time step, agents in recording order."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w", newline="", encoding="utf-8") as fh:
            write_recording(recording, fh)
        return
    writer = csv.writer(dest, lineterminator="\n")
    writer.writerow(TRAJECTORY_COLUMNS)
    for k in range(len(recording.times)):
        for traj in recording.trajectories:
            x, y = traj.positions[k]
            vx, vy = traj.velocities[k]
            writer.writerow([fmt(traj.times[k]), traj.agent_id, fmt(x), fmt(y), fmt(vx), fmt(vy)])


def _parse_float(text: str, column: str, line: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise FormatError(f"column {column!r}: not a number: {text!r}", line) from None
    if not math.isfinite(value):
        raise FormatError(f"column {column!r}: non-finite value {text!r}", line)
    return value


def load_recording(path: str | Path, cfg: MetricsConfig = MetricsConfig(), name: str | None = None) -> ScenarioRecording:
    """Parse a trajectory CSV into a recording.

    Agents take ``cfg.agent_radius_default`` as radius. Without ``vx,vy``
    columns velocities are forward differences of positions. Rejects
    malformed rows (with line number), timestamps off a uniform grid and
    agents on different grids.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise FormatError("empty file") from None
        missing = [c for c in ("t", "agent_id", "x", "y") if c not in header]
        if missing:
            raise FormatError(f"missing required columns {missing}", 1)
        has_v = "vx" in header, "vy" in header
        if has_v[0] != has_v[1]:
            raise FormatError("velocity columns vx and vy must appear together", 1)
        unknown = [c for c in header if c not in TRAJECTORY_COLUMNS]
        if unknown:
            log.warning("%s: ignoring unknown columns %s", path, unknown)
        col = {c: header.index(c) for c in TRAJECTORY_COLUMNS if c in header}

        rows: dict[str, list[tuple]] = {}
        for line, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise FormatError(f"expected {len(header)} fields, got {len(row)}", line)
            agent = row[col["agent_id"]].strip()
            if not agent:
                raise FormatError("empty agent_id", line)
            values = [_parse_float(row[col[c]], c, line) for c in ("t", "x", "y")]
            if has_v[0]:
                values += [_parse_float(row[col[c]], c, line) for c in ("vx", "vy")]
            rows.setdefault(agent, []).append((line, *values))

    if len(rows) < 2:
        raise FormatError(f"need at least 2 agents, found {len(rows)}")
    trajectories = []
    for agent, samples in rows.items():
        lines = [s[0] for s in samples]
        times = np.array([s[1] for s in samples])
        try:
            dt = check_uniform_grid(times)
        except GridError as exc:
            at = lines[exc.index] if exc.index is not None else None
            raise FormatError(f"agent {agent!r}: {exc}", at) from None
        except TrajectoryError as exc:
            raise FormatError(f"agent {agent!r}: {exc}") from None
        if has_v[0]:
            traj = Trajectory(
                agent,
                cfg.agent_radius_default,
                times,
                [(s[2], s[3]) for s in samples],
                [(s[4], s[5]) for s in samples],
            )
        else:
            traj = resample_velocities(agent, [(s[1], (s[2], s[3])) for s in samples], dt, cfg.agent_radius_default)
        trajectories.append(traj)
    try:
        return ScenarioRecording(tuple(trajectories), name=name or path.stem)
    except GridError as exc:
        raise FormatError(f"mixed time grids: {exc}") from None


# -- conflict series ---------------------------------------------------------


def write_series(series: ConflictSeries, path: str | Path) -> None:
    columns = (
        series.times,
        series.distance,
        series.pdce,
        series.potential,
        series.contribution_a,
        series.contribution_b,
    )
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SERIES_COLUMNS)
        for row in zip(*columns):
            writer.writerow([fmt(v) for v in row])


def read_series(path: str | Path) -> dict[str, np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        data = {c: [] for c in SERIES_COLUMNS}
        for row in reader:
            for c in SERIES_COLUMNS:
                data[c].append(float(row[c]))
    return {c: np.array(v) for c, v in data.items()}


# -- configuration -------------------------------------------------------------

# SocialForceParams.lambda_ is spelled "lambda" in files.
_SF_FILE_NAMES = {"lambda_": "lambda"}


def config_to_dict(
    metrics: MetricsConfig,
    sim: SimConfig | None = None,
    social_force: SocialForceParams | None = None,
) -> dict[str, Any]:
    out: dict[str, Any] = {"metrics": asdict(metrics)}
    out["sim"] = asdict(sim) if sim is not None else None
    out["social_force"] = (
        {_SF_FILE_NAMES.get(k, k): v for k, v in asdict(social_force).items()} if social_force is not None else None
    )
    return out


def _build(cls, section: dict[str, Any] | None, renames: dict[str, str] | None = None):
    if section is None:
        return cls()
    renames = renames or {}
    by_file_name = {renames.get(f.name, f.name): f.name for f in fields(cls)}
    unknown = set(section) - set(by_file_name)
    if unknown:
        raise ValueError(f"unknown {cls.__name__} fields: {sorted(unknown)}")
    return cls(**{by_file_name[k]: v for k, v in section.items()})


def config_from_dict(data: dict[str, Any]) -> tuple[MetricsConfig, SimConfig, SocialForceParams]:
    if "config_echo" in data:  # a report carries its own configuration
        data = data["config_echo"]
    unknown = set(data) - {"metrics", "sim", "social_force"}
    if unknown:
        raise ValueError(f"unknown config sections: {sorted(unknown)}")
    return (
        _build(MetricsConfig, data.get("metrics")),
        _build(SimConfig, data.get("sim")),
        _build(SocialForceParams, data.get("social_force"), _SF_FILE_NAMES),
    )


def load_config(path: str | Path) -> tuple[MetricsConfig, SimConfig, SocialForceParams]:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))
