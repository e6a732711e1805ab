import csv
import json
import subprocess
import sys

import pytest

from conflictbench.cli import TABLE_COLUMNS, main
from conflictbench.report import MetricReport


def test_table_rows_and_ordering(tmp_path, capsys):
    out = tmp_path / "table.csv"
    assert main(["table", "--out", str(out)]) == 0
    printed = capsys.readouterr().out.splitlines()
    assert printed[0].split() == list(TABLE_COLUMNS)
    assert [line.split()[0] for line in printed[1:]] == ["s1", "s2", "s3", "s4"]
    with open(out, newline="") as fh:
        rows = {r["scenario"]: r for r in csv.DictReader(fh)}
    assert list(rows) == ["s1", "s2", "s3", "s4"]
    i = {k: float(r["intensity"]) for k, r in rows.items()}
    assert i["s1"] > i["s2"] > i["s4"] and abs(i["s2"] - i["s3"]) < 1e-9
    ppd = {k: float(r["ppd"]) for k, r in rows.items()}
    assert ppd["s1"] == ppd["s2"] == ppd["s3"] > ppd["s4"] == 0.0
    svr = {k: float(r["svr"]) for k, r in rows.items()}
    assert svr["s1"] >= svr["s2"] == svr["s3"] >= svr["s4"]


def test_table_figure_and_reports(tmp_path, capsys):
    fig, reports = tmp_path / "progression.png", tmp_path / "reports"
    assert main(["table", "--scenarios", "s4", "cross90", "--figure", str(fig), "--reports", str(reports)]) == 0
    assert fig.stat().st_size > 0
    assert sorted(p.name for p in reports.iterdir()) == ["cross90.json", "s4.json"]
    report = MetricReport.from_json((reports / "s4.json").read_text())
    assert report.config_echo["sim"]["dt"] == 0.1


def test_simulate_evaluate_round_trip(tmp_path, capsys, scenario_runs):
    traj = tmp_path / "s3.csv"
    assert main(["simulate", "--scenario", "s3", "--out", str(traj)]) == 0
    series, fig, rep = tmp_path / "series.csv", tmp_path / "series.png", tmp_path / "report.json"
    argv = ["evaluate", "--in", str(traj), "--ego", "robot", "--out", str(rep), "--series", str(series), "--figure", str(fig)]
    assert main(argv) == 0
    report = MetricReport.from_json(rep.read_text())
    assert report == scenario_runs["s3"][1]
    assert series.read_text().startswith("t,distance,pdce,conflict_potential")
    assert fig.stat().st_size > 0


def test_simulate_to_stdout(capsys):
    assert main(["simulate", "--scenario", "s1", "--dt", "0.2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t,agent_id,x,y,vx,vy"
    assert lines[3].startswith("0.20000000000000001,robot,")


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"metrics": {"agent_radius_default": 0.4}, "sim": {"dt": 0.2}}))
    traj = tmp_path / "t.csv"
    assert main(["simulate", "--scenario", "s1", "--config", str(cfg), "--dt", "0.1", "--out", str(traj)]) == 0
    assert traj.read_text().splitlines()[3].startswith("0.10000000000000001,")
    assert main(["evaluate", "--in", str(traj), "--ego", "robot", "--config", str(cfg)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["config_echo"]["metrics"]["agent_radius_default"] == 0.4


def test_missing_file(tmp_path, capsys):
    assert main(["evaluate", "--in", str(tmp_path / "nope.csv"), "--ego", "robot"]) != 0
    assert "file not found" in capsys.readouterr().err


def test_malformed_file_and_bad_ego(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,agent_id,x,y\n0,a,0,0\n0,b,x,0\n")
    assert main(["evaluate", "--in", str(bad), "--ego", "a"]) == 1
    assert "line 3" in capsys.readouterr().err
    good = tmp_path / "good.csv"
    assert main(["simulate", "--scenario", "s1", "--out", str(good)]) == 0
    assert main(["evaluate", "--in", str(good), "--ego", "ghost"]) == 1
    assert "ghost" in capsys.readouterr().err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code != 0
    assert "usage" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["simulate", "--scenario", "s9"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "conflictbench", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "simulate" in proc.stdout
