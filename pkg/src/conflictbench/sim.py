"""Deterministic fixed-step 2D simulation with constant-velocity and social-force agents.

The social-force planner uses goal relaxation plus the pairwise interaction
force of Moussaid et al. (2009): for a neighbour at distance d and unit
direction e, the interaction vector is ``D = lambda * (v_self - v_other) + e``
with unit direction t and range ``B = gamma * |D|``. With theta the signed
angle from e to t,

    f = -A exp(-d/B) [exp(-(n' B theta)^2) t - K exp(-(n B theta)^2) t_left]

where K = sign(theta). A perfectly collinear approach (theta == 0) is
broken deterministically with K = -1, which steers the agent to its right.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from conflictbench.model import AgentSample, ScenarioRecording, Trajectory, Vec2, as_vec


class Planner(str, enum.Enum):
    CONSTANT_VELOCITY = "constant_velocity"
    SOCIAL_FORCE = "social_force"


@dataclass(frozen=True)
class AgentSpec:
    id: str
    start: Vec2
    goal: Vec2
    planner: Planner = Planner.SOCIAL_FORCE
    desired_speed: float = 1.0
    radius: float = 0.5

    def __post_init__(self):
        start, goal = as_vec(self.start), as_vec(self.goal)
        if not self.desired_speed > 0:
            raise ValueError(f"desired_speed must be > 0, got {self.desired_speed}")
        if not self.radius > 0:
            raise ValueError(f"radius must be > 0, got {self.radius}")
        if np.array_equal(start, goal):
            raise ValueError(f"agent {self.id!r}: start equals goal")
        object.__setattr__(self, "start", Vec2(*map(float, start)))
        object.__setattr__(self, "goal", Vec2(*map(float, goal)))
        object.__setattr__(self, "planner", Planner(self.planner))


@dataclass(frozen=True)
class SocialForceParams:
    a_strength: float = 5.1
    lambda_: float = 3.0
    gamma: float = 0.35
    n: float = 1.0
    n_prime: float = 3.0
    relaxation_time: float = 1.1

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value > 0:
                raise ValueError(f"SocialForceParams.{name} must be > 0, got {value}")


@dataclass(frozen=True)
class SimConfig:
    dt: float = 0.1
    max_duration: float = 40.0
    goal_tolerance: float = 0.3
    speed_cap_factor: float = 1.3
    # Fixed magnitude (m/s^2) of the fallback push for coincident agents.
    coincident_repulsion: float = 5.1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not self.max_duration >= self.dt:
            raise ValueError("max_duration must be >= dt")
        if not (self.goal_tolerance > 0 and self.speed_cap_factor > 0):
            raise ValueError("goal_tolerance and speed_cap_factor must be > 0")


@dataclass(frozen=True)
class Neighbor:
    position: np.ndarray
    velocity: np.ndarray
    radius: float = 0.5


def _unit_toward(frm: np.ndarray, to: np.ndarray) -> tuple[np.ndarray, float]:
    delta = to - frm
    dist = math.hypot(delta[0], delta[1])
    return (delta / dist if dist > 0 else np.zeros(2)), dist


def _at_goal(position: np.ndarray, goal: np.ndarray, tolerance: float) -> bool:
    return math.hypot(goal[0] - position[0], goal[1] - position[1]) <= tolerance


def step_constant_velocity(
    state: AgentSample, goal, desired_speed: float, dt: float, goal_tolerance: float = 0.3
) -> AgentSample:
    """Walk straight at ``desired_speed`` toward the goal, ignoring everyone else."""
    pos, goal = np.asarray(state.position, dtype=float), as_vec(goal)
    if _at_goal(pos, goal, goal_tolerance):
        return AgentSample(state.t + dt, Vec2(*pos), Vec2(0.0, 0.0))
    direction, _ = _unit_toward(pos, goal)
    vel = desired_speed * direction
    return AgentSample(state.t + dt, Vec2(*(pos + vel * dt)), Vec2(*vel))


def interaction_force(
    position: np.ndarray,
    velocity: np.ndarray,
    other: Neighbor,
    params: SocialForceParams,
    coincident_repulsion: float = 5.1,
) -> np.ndarray:
    """Moussaid interaction force exerted on an agent by one neighbour."""
    e, dist = _unit_toward(position, np.asarray(other.position, dtype=float))
    if dist == 0.0:
        # Push to the right of the own heading (or along -y when at rest).
        speed = math.hypot(velocity[0], velocity[1])
        heading = velocity / speed if speed > 0 else np.array([1.0, 0.0])
        return coincident_repulsion * np.array([heading[1], -heading[0]])
    d_vec = params.lambda_ * (velocity - np.asarray(other.velocity, dtype=float)) + e
    d_len = math.hypot(d_vec[0], d_vec[1])
    t = d_vec / d_len
    t_left = np.array([-t[1], t[0]])
    theta = math.atan2(e[0] * t[1] - e[1] * t[0], e[0] * t[0] + e[1] * t[1])
    k = 1.0 if theta > 0.0 else -1.0
    b = params.gamma * d_len
    decay = math.exp(-dist / b)
    along = math.exp(-((params.n_prime * b * theta) ** 2))
    lateral = math.exp(-((params.n * b * theta) ** 2))
    return -params.a_strength * decay * (along * t - k * lateral * t_left)


def social_force_acceleration(
    position: np.ndarray,
    velocity: np.ndarray,
    goal: np.ndarray,
    desired_speed: float,
    neighbors: list[Neighbor],
    params: SocialForceParams,
    coincident_repulsion: float = 5.1,
) -> np.ndarray:
    direction, _ = _unit_toward(position, goal)
    acc = (desired_speed * direction - velocity) / params.relaxation_time
    for other in neighbors:
        acc = acc + interaction_force(position, velocity, other, params, coincident_repulsion)
    return acc


def step_social_force(
    state: AgentSample,
    goal,
    neighbors: list[Neighbor],
    params: SocialForceParams = SocialForceParams(),
    dt: float = 0.1,
    desired_speed: float = 1.0,
    sim: SimConfig = SimConfig(),
) -> AgentSample:
    """One semi-implicit Euler step: velocity first (capped), then position with the new velocity."""
    pos = np.asarray(state.position, dtype=float)
    vel = np.asarray(state.velocity, dtype=float)
    goal = as_vec(goal)
    if _at_goal(pos, goal, sim.goal_tolerance):
        return AgentSample(state.t + dt, Vec2(*pos), Vec2(0.0, 0.0))
    acc = social_force_acceleration(pos, vel, goal, desired_speed, neighbors, params, sim.coincident_repulsion)
    new_vel = vel + acc * dt
    cap = sim.speed_cap_factor * desired_speed
    speed = math.hypot(new_vel[0], new_vel[1])
    if speed > cap:
        new_vel = new_vel * (cap / speed)
    return AgentSample(state.t + dt, Vec2(*(pos + new_vel * dt)), Vec2(*new_vel))


def initial_sample(spec: AgentSpec) -> AgentSample:
    """Agents start already walking at desired speed toward their goal."""
    start, goal = np.asarray(spec.start), np.asarray(spec.goal)
    direction, _ = _unit_toward(start, goal)
    return AgentSample(0.0, spec.start, Vec2(*(spec.desired_speed * direction)))


@dataclass
class _Agent:
    spec: AgentSpec
    samples: list[AgentSample] = field(default_factory=list)

    @property
    def state(self) -> AgentSample:
        return self.samples[-1]


def simulate(
    agents: list[AgentSpec],
    sim: SimConfig = SimConfig(),
    params: SocialForceParams = SocialForceParams(),
) -> tuple[tuple[Trajectory, ...], bool]:
    """Step all agents synchronously until everyone is at its goal or time runs out.

    Every step reads only the states of the previous step, so the result does
    not depend on agent order. Returns the trajectories (initial state
    included) and whether ``max_duration`` cut the run short.
    """
    if not agents:
        raise ValueError("need at least one agent")
    live = [_Agent(spec, [initial_sample(spec)]) for spec in agents]
    n_steps = int(round(sim.max_duration / sim.dt))

    def all_arrived() -> bool:
        return all(
            _at_goal(np.asarray(a.state.position), np.asarray(a.spec.goal), sim.goal_tolerance) for a in live
        )

    for k in range(1, n_steps + 1):
        if all_arrived():
            break
        t = k * sim.dt
        nxt = []
        for agent in live:
            spec, state = agent.spec, agent.state
            if spec.planner is Planner.CONSTANT_VELOCITY:
                new = step_constant_velocity(state, spec.goal, spec.desired_speed, sim.dt, sim.goal_tolerance)
            else:
                neighbors = [
                    Neighbor(np.asarray(o.state.position), np.asarray(o.state.velocity), o.spec.radius)
                    for o in live
                    if o is not agent
                ]
                new = step_social_force(state, spec.goal, neighbors, params, sim.dt, spec.desired_speed, sim)
            nxt.append(AgentSample(t, new.position, new.velocity))
        for agent, sample in zip(live, nxt):
            agent.samples.append(sample)
    trajectories = tuple(Trajectory.from_samples(a.spec.id, a.spec.radius, a.samples) for a in live)
    return trajectories, not all_arrived()


def run_scenario(
    agents: list[AgentSpec],
    sim: SimConfig = SimConfig(),
    params: SocialForceParams = SocialForceParams(),
    name: str = "scenario",
) -> ScenarioRecording:
    if len(agents) < 2:
        raise ValueError(f"a scenario needs at least 2 agents, got {len(agents)}")
    trajectories, truncated = simulate(agents, sim, params)
    return ScenarioRecording(trajectories, name=name, truncated=truncated)
