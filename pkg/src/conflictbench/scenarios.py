"""Built-in two-agent scenarios: the four head-on compliance permutations and a 90 degree crossing."""

from __future__ import annotations

from conflictbench.model import ScenarioRecording
from conflictbench.sim import AgentSpec, Planner, SimConfig, SocialForceParams, run_scenario

CV = Planner.CONSTANT_VELOCITY
SF = Planner.SOCIAL_FORCE

SEPARATION = 20.0  # m between the head-on start positions

# name -> (robot planner, human planner, description)
HEAD_ON = {
    "s1": (CV, CV, "nobody compliant"),
    "s2": (CV, SF, "robot not compliant"),
    "s3": (SF, CV, "human not compliant"),
    "s4": (SF, SF, "both compliant"),
}
SCENARIOS = (*HEAD_ON, "cross90")
DESCRIPTIONS = {name: desc for name, (_, _, desc) in HEAD_ON.items()} | {"cross90": "90 degree crossing, both compliant"}


def scenario_agents(name: str, radius: float = 0.5, desired_speed: float = 1.0) -> list[AgentSpec]:
    """Agent specs for a catalog entry; the robot is always listed first."""
    if name in HEAD_ON:
        robot, human, _ = HEAD_ON[name]
        return [
            AgentSpec("robot", (0.0, 0.0), (SEPARATION, 0.0), robot, desired_speed, radius),
            AgentSpec("human", (SEPARATION, 0.0), (0.0, 0.0), human, desired_speed, radius),
        ]
    if name == "cross90":
        half = SEPARATION / 2
        return [
            AgentSpec("robot", (0.0, 0.0), (SEPARATION, 0.0), SF, desired_speed, radius),
            AgentSpec("human", (half, -half), (half, half), SF, desired_speed, radius),
        ]
    raise KeyError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")


def simulate_scenario(
    name: str,
    sim: SimConfig = SimConfig(),
    params: SocialForceParams = SocialForceParams(),
    radius: float = 0.5,
) -> ScenarioRecording:
    return run_scenario(scenario_agents(name, radius), sim, params, name=name)
