import io as stdio
import json
import logging
import pathlib
import tempfile

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conflictbench.io import (
    FormatError,
    config_from_dict,
    config_to_dict,
    load_config,
    load_recording,
    read_series,
    write_recording,
    write_series,
)
from conflictbench.conflict import conflict_series
from conflictbench.model import MetricsConfig, ScenarioRecording
from conflictbench.sim import SimConfig, SocialForceParams
from conftest import make_traj, straight

WELL_FORMED = """t,agent_id,x,y,vx,vy
0.0,robot,0,0,1,0
0.0,human,5,0,-1,0
0.1,robot,0.1,0,1,0
0.1,human,4.9,0,-1,0
0.2,robot,0.2,0,1,0
0.2,human,4.8,0,-1,0
"""


def _write(tmp_path, text, name="rec.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_well_formed_file(tmp_path):
    rec = load_recording(_write(tmp_path, WELL_FORMED))
    assert rec.agent_ids == ["robot", "human"]
    assert rec.name == "rec" and rec.dt == pytest.approx(0.1) and len(rec.times) == 3
    assert np.array_equal(rec["human"].velocities, np.tile([-1.0, 0.0], (3, 1)))
    assert rec["robot"].radius == 0.5
    assert load_recording(_write(tmp_path, WELL_FORMED), MetricsConfig(agent_radius_default=0.3))["robot"].radius == 0.3


def test_jittered_timestamps_rejected_with_line(tmp_path):
    text = WELL_FORMED.replace("0.2,robot", "0.23,robot")
    with pytest.raises(FormatError) as info:
        load_recording(_write(tmp_path, text))
    assert info.value.line == 6


def test_mixed_grids_rejected(tmp_path):
    text = "t,agent_id,x,y\n0,a,0,0\n0.1,a,1,0\n0,b,0,0\n0.2,b,1,0\n"
    with pytest.raises(FormatError, match="grid"):
        load_recording(_write(tmp_path, text))


def test_missing_velocity_uses_forward_differences(tmp_path):
    text = "t,agent_id,x,y\n" + "".join(
        f"{0.1 * k:.1f},a,{(0.1 * k) ** 2:.6f},0\n{0.1 * k:.1f},b,5,{0.2 * k:.6f}\n" for k in range(5)
    )
    rec = load_recording(_write(tmp_path, text))
    np.testing.assert_allclose(rec["a"].velocities[:, 0], [0.1, 0.3, 0.5, 0.7, 0.7], atol=1e-9)
    np.testing.assert_allclose(rec["b"].velocities[:, 1], 2.0, atol=1e-9)


@pytest.mark.parametrize(
    "bad_row, message",
    [("0.1,robot,abc,0,1,0", "not a number"), ("0.1,robot,0.1,0,1", "fields"), ("0.1,,0.1,0,1,0", "agent_id"),
     ("0.1,robot,nan,0,1,0", "non-finite")],
)
def test_malformed_row_reports_line(tmp_path, bad_row, message):
    lines = WELL_FORMED.splitlines()
    lines[3] = bad_row
    with pytest.raises(FormatError, match=message) as info:
        load_recording(_write(tmp_path, "\n".join(lines) + "\n"))
    assert info.value.line == 4


def test_header_problems(tmp_path):
    with pytest.raises(FormatError, match="missing"):
        load_recording(_write(tmp_path, "t,agent_id,x\n0,a,0\n"))
    with pytest.raises(FormatError, match="together"):
        load_recording(_write(tmp_path, "t,agent_id,x,y,vx\n0,a,0,0,1\n"))
    with pytest.raises(FormatError, match="empty"):
        load_recording(_write(tmp_path, ""))
    with pytest.raises(FormatError, match="2 agents"):
        load_recording(_write(tmp_path, "t,agent_id,x,y\n0,a,0,0\n0.1,a,1,0\n"))


def test_unknown_column_warns(tmp_path, caplog):
    text = "\n".join(line + (",extra" if k == 0 else ",1") for k, line in enumerate(WELL_FORMED.splitlines()))
    with caplog.at_level(logging.WARNING, logger="conflictbench.io"):
        rec = load_recording(_write(tmp_path, text + "\n"))
    assert "extra" in caplog.text
    assert len(rec.times) == 3


def test_csv_round_trip_bit_exact(scenario_runs, tmp_path):
    rec, _ = scenario_runs["s4"]
    path = tmp_path / "s4.csv"
    write_recording(rec, path)
    again = load_recording(path)
    assert again.agent_ids == rec.agent_ids and again.name == "s4"
    for a, b in zip(rec.trajectories, again.trajectories):
        assert np.array_equal(a.times, b.times)
        assert np.array_equal(a.positions, b.positions)
        assert np.array_equal(a.velocities, b.velocities)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_csv_round_trip_random_floats(seed):
    rng = np.random.default_rng(seed)
    a = make_traj("a", rng.normal(scale=50, size=(6, 2)), rng.normal(scale=3, size=(6, 2)), dt=0.05)
    b = make_traj("b", rng.normal(scale=1e-7, size=(6, 2)), rng.normal(scale=3, size=(6, 2)), dt=0.05)
    buf = stdio.StringIO()
    write_recording(ScenarioRecording((a, b)), buf)
    with tempfile.TemporaryDirectory() as d:
        path = pathlib.Path(d) / "r.csv"
        path.write_text(buf.getvalue())
        again = load_recording(path)
    for x, y in zip((a, b), again.trajectories):
        assert np.array_equal(x.positions, y.positions) and np.array_equal(x.velocities, y.velocities)


def test_series_round_trip(tmp_path):
    a = straight("a", (0, 0), (1, 0), 40)
    b = straight("b", (6, 0.3), (-1, 0.05), 40)
    series = conflict_series(a, b)
    write_series(series, tmp_path / "series.csv")
    data = read_series(tmp_path / "series.csv")
    assert np.array_equal(data["conflict_potential"], series.potential)
    assert np.array_equal(data["pdce"], series.pdce)
    assert np.array_equal(data["contribution_b"], series.contribution_b)


def test_config_round_trip(tmp_path):
    cfg = (MetricsConfig(personal_space_radius=2.4), SimConfig(dt=0.05), SocialForceParams(lambda_=2.0))
    data = config_to_dict(*cfg)
    assert data["social_force"]["lambda"] == 2.0
    assert config_from_dict(data) == cfg
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(data))
    assert load_config(path) == cfg
    # partial files fill in defaults
    assert config_from_dict({"metrics": {"ci_sigma": 0.3}}) == (MetricsConfig(ci_sigma=0.3), SimConfig(), SocialForceParams())
    with pytest.raises(ValueError):
        config_from_dict({"metrics": {"sigma": 0.3}})
    with pytest.raises(ValueError):
        config_from_dict({"extras": {}})
