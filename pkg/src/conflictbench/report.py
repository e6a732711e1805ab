"""Full metric battery for a recording, as a self-describing report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from conflictbench import conflict, io, kinematics, prediction, proximity
from conflictbench.model import MetricsConfig, ScenarioRecording
from conflictbench.sim import SimConfig, SocialForceParams

PAIR_SEPARATOR = "|"


@dataclass(frozen=True)
class PairMetrics:
    agent_a: str
    agent_b: str
    cd_avg: float | None
    cd_max: float | None
    svr: float
    collision_index: float
    min_ttc: float | None
    ppd: float
    intensity: float
    responsibility: tuple[float, float]

    @property
    def key(self) -> str:
        return f"{self.agent_a}{PAIR_SEPARATOR}{self.agent_b}"


@dataclass(frozen=True)
class MetricReport:
    scenario_name: str
    ego_id: str
    dt: float
    duration: float
    truncated: bool
    per_agent: dict[str, kinematics.KinematicSummary]
    per_pair: dict[str, PairMetrics]
    mean_intensity: float | None
    mean_ego_responsibility: float | None
    config_echo: dict[str, Any] = field(default_factory=dict)

    def pair(self, a: str, b: str) -> PairMetrics:
        """Metrics of the unordered pair (a, b), oriented so that ``agent_a == a``."""
        key = f"{a}{PAIR_SEPARATOR}{b}"
        if key in self.per_pair:
            return self.per_pair[key]
        flipped = self.per_pair[f"{b}{PAIR_SEPARATOR}{a}"]
        return PairMetrics(
            a,
            b,
            flipped.cd_avg,
            flipped.cd_max,
            flipped.svr,
            flipped.collision_index,
            flipped.min_ttc,
            flipped.ppd,
            flipped.intensity,
            flipped.responsibility[::-1],
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario_name": self.scenario_name,
            "ego_id": self.ego_id,
            "dt": self.dt,
            "duration": self.duration,
            "truncated": self.truncated,
            "per_agent": {k: v.as_dict() for k, v in self.per_agent.items()},
            "per_pair": {
                k: {**asdict(v), "responsibility": list(v.responsibility)} for k, v in self.per_pair.items()
            },
            "aggregate": {
                "mean_intensity": self.mean_intensity,
                "mean_ego_responsibility": self.mean_ego_responsibility,
            },
            "config_echo": self.config_echo,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MetricReport":
        pairs = {}
        for key, value in data["per_pair"].items():
            value = dict(value)
            value["responsibility"] = tuple(value["responsibility"])
            pairs[key] = PairMetrics(**value)
        return cls(
            scenario_name=data["scenario_name"],
            ego_id=data["ego_id"],
            dt=data["dt"],
            duration=data["duration"],
            truncated=data["truncated"],
            per_agent={k: kinematics.KinematicSummary(**v) for k, v in data["per_agent"].items()},
            per_pair=pairs,
            mean_intensity=data["aggregate"]["mean_intensity"],
            mean_ego_responsibility=data["aggregate"]["mean_ego_responsibility"],
            config_echo=data["config_echo"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> "MetricReport":
        return cls.from_dict(json.loads(text))

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")


def pair_metrics(a, b, cfg: MetricsConfig) -> PairMetrics:
    cd = proximity.clearing_distance(a, b, cfg)
    verdict = conflict.pair_verdict(a, b, cfg)
    return PairMetrics(
        agent_a=a.agent_id,
        agent_b=b.agent_id,
        cd_avg=cd.cd_avg,
        cd_max=cd.cd_max,
        svr=proximity.space_violation_rate(a, b, cfg),
        collision_index=proximity.collision_index(a, b, cfg),
        min_ttc=prediction.min_ttc(a, b),
        ppd=prediction.projected_path_duration(a, b, cfg),
        intensity=verdict.intensity,
        responsibility=(verdict.responsibility_a, verdict.responsibility_b),
    )


def evaluate(
    recording: ScenarioRecording,
    ego_id: str,
    cfg: MetricsConfig = MetricsConfig(),
    sim: SimConfig | None = None,
    social_force: SocialForceParams | None = None,
) -> MetricReport:
    """Every kinematic, proximity, prediction and conflict metric of a recording.

    Kinematics skip an agent's final dwell at its goal. Pairs are all
    unordered agent pairs in recording order; the optional simulator
    settings are only echoed into the report.
    """
    if ego_id not in recording:
        raise KeyError(f"ego {ego_id!r} not in recording (agents: {recording.agent_ids})")
    trajs = recording.trajectories
    per_agent = {t.agent_id: kinematics.kinematic_summary(kinematics.active_span(t)) for t in trajs}
    per_pair = {}
    for i, a in enumerate(trajs):
        for b in trajs[i + 1 :]:
            pm = pair_metrics(a, b, cfg)
            per_pair[pm.key] = pm
    aggregate = conflict.aggregate_pairwise(recording, ego_id, cfg)
    return MetricReport(
        scenario_name=recording.name,
        ego_id=ego_id,
        dt=recording.dt,
        duration=recording.duration,
        truncated=recording.truncated,
        per_agent=per_agent,
        per_pair=per_pair,
        mean_intensity=aggregate.mean_intensity,
        mean_ego_responsibility=aggregate.mean_ego_responsibility,
        config_echo=io.config_to_dict(cfg, sim, social_force),
    )


def export_series(
    recording: ScenarioRecording,
    pair: tuple[str, str],
    cfg: MetricsConfig = MetricsConfig(),
    path: str | Path | None = None,
) -> conflict.ConflictSeries:
    """Step-wise conflict series for one pair, optionally written as CSV."""
    a_id, b_id = pair
    if a_id == b_id or a_id not in recording or b_id not in recording:
        raise KeyError(f"unknown pair {pair!r} (agents: {recording.agent_ids})")
    series = conflict.conflict_series(recording[a_id], recording[b_id], cfg)
    if path is not None:
        io.write_series(series, path)
    return series
