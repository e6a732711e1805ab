import time

import numpy as np
import pytest

from conflictbench.model import MetricsConfig, ScenarioRecording, Trajectory
from conflictbench.report import evaluate
from conflictbench.scenarios import simulate_scenario

SUITE_BUDGET_S = 30.0

_acceptance_lines: list[tuple[str, bool, str]] = []
_session_start = [0.0]


def make_traj(agent_id, positions, velocities=None, dt=0.1, radius=0.5, t0=0.0):
    positions = np.asarray(positions, dtype=float)
    if velocities is None:
        velocities = np.zeros_like(positions)
    times = t0 + dt * np.arange(len(positions))
    return Trajectory(agent_id, radius, times, positions, np.asarray(velocities, dtype=float))


def straight(agent_id, start, velocity, n, dt=0.1, radius=0.5):
    """Exact constant-velocity trajectory."""
    start = np.asarray(start, dtype=float)
    velocity = np.asarray(velocity, dtype=float)
    k = np.arange(n)[:, None]
    return make_traj(agent_id, start + velocity * k * dt, np.tile(velocity, (n, 1)), dt, radius)


@pytest.fixture(scope="session")
def scenario_runs():
    """Simulated catalog scenarios and their default-config reports, computed once."""
    runs = {}
    for name in ("s1", "s2", "s3", "s4", "cross90"):
        recording = simulate_scenario(name)
        runs[name] = (recording, evaluate(recording, "robot", MetricsConfig()))
    return runs


@pytest.fixture
def record_criterion():
    def record(label: str, ok: bool, detail: str = ""):
        _acceptance_lines.append((label, bool(ok), detail))
        return ok

    return record


def pytest_sessionstart(session):
    _session_start[0] = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_lines:
        return
    elapsed = time.perf_counter() - _session_start[0]
    tr = terminalreporter
    tr.section("acceptance criteria")
    for label, ok, detail in _acceptance_lines:
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
    # The whole-suite runtime bound can only be judged once every test has run.
    ok = elapsed < SUITE_BUDGET_S
    tr.write_line(f"{'PASS' if ok else 'FAIL'}  AC10 suite runtime  {elapsed:.1f} s (< {SUITE_BUDGET_S:.0f} s)")


def pytest_sessionfinish(session, exitstatus):
    if _acceptance_lines and time.perf_counter() - _session_start[0] >= SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1


__all__ = ["make_traj", "straight", "ScenarioRecording"]
