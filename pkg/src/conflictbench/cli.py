"""Command line entry point: ``conflictbench {simulate,evaluate,table}``."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import logging
import sys
from pathlib import Path

from conflictbench import io, plotting
from conflictbench.io import FormatError
from conflictbench.model import MetricsConfig, TrajectoryError
from conflictbench.report import MetricReport, evaluate, export_series
from conflictbench.scenarios import DESCRIPTIONS, HEAD_ON, SCENARIOS, simulate_scenario
from conflictbench.sim import SimConfig, SocialForceParams

log = logging.getLogger("conflictbench")

TABLE_COLUMNS = (
    "scenario",
    "v_avg",
    "a_avg",
    "a_max",
    "j_avg",
    "j_max",
    "cd_avg",
    "svr",
    "collision_index",
    "min_ttc",
    "ppd",
    "intensity",
    "responsibility_robot",
    "responsibility_human",
)


def _configs(args) -> tuple[MetricsConfig, SimConfig, SocialForceParams]:
    if args.config:
        metrics, sim, social_force = io.load_config(args.config)
    else:
        metrics, sim, social_force = MetricsConfig(), SimConfig(), SocialForceParams()
    if getattr(args, "radius", None) is not None:
        metrics = dataclasses.replace(metrics, agent_radius_default=args.radius)
    if getattr(args, "dt", None) is not None:
        sim = dataclasses.replace(sim, dt=args.dt)
        metrics = dataclasses.replace(metrics, dt_default=args.dt)
    return metrics, sim, social_force


def cmd_simulate(args) -> int:
    metrics, sim, social_force = _configs(args)
    recording = simulate_scenario(args.scenario, sim, social_force, radius=metrics.agent_radius_default)
    if recording.truncated:
        log.warning("scenario %s hit max_duration before all agents reached their goals", args.scenario)
    if args.out:
        io.write_recording(recording, args.out)
        log.info("wrote %d steps of %s to %s", len(recording.times), args.scenario, args.out)
    else:
        io.write_recording(recording, sys.stdout)
    return 0


def cmd_evaluate(args) -> int:
    metrics, _, _ = _configs(args)
    recording = io.load_recording(args.input, metrics)
    report = evaluate(recording, args.ego, metrics)
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    if args.series or args.figure:
        other = args.pair or next(i for i in recording.agent_ids if i != args.ego)
        series = export_series(recording, (args.ego, other), metrics, args.series)
        if args.figure:
            plotting.plot_series(series, args.figure, labels=(args.ego, other), title=recording.name)
    return 0


def table_rows(metrics: MetricsConfig, sim: SimConfig, social_force: SocialForceParams, names=tuple(HEAD_ON)):
    """Simulate and evaluate each scenario; returns (rows, {name: (recording, report)})."""
    rows, runs = [], {}
    for name in names:
        recording = simulate_scenario(name, sim, social_force, radius=metrics.agent_radius_default)
        report = evaluate(recording, "robot", metrics, sim, social_force)
        runs[name] = (recording, report)
        robot = report.per_agent["robot"]
        pair = report.pair("robot", "human")
        rows.append(
            {
                "scenario": name,
                "v_avg": robot.v_avg,
                "a_avg": robot.a_avg,
                "a_max": robot.a_max,
                "j_avg": robot.j_avg,
                "j_max": robot.j_max,
                "cd_avg": pair.cd_avg,
                "svr": pair.svr,
                "collision_index": pair.collision_index,
                "min_ttc": pair.min_ttc,
                "ppd": pair.ppd,
                "intensity": pair.intensity,
                "responsibility_robot": pair.responsibility[0],
                "responsibility_human": pair.responsibility[1],
            }
        )
    return rows, runs


def _cell(value, digits: int = 2) -> str:
    if value is None:
        return "-"
    if isinstance(value, str):
        return value
    return f"{value:.{digits}f}"


def cmd_table(args) -> int:
    metrics, sim, social_force = _configs(args)
    names = tuple(args.scenarios) if args.scenarios else tuple(HEAD_ON)
    rows, runs = table_rows(metrics, sim, social_force, names)
    widths = [max(len(c), 8) for c in TABLE_COLUMNS]
    print("  ".join(c.rjust(w) for c, w in zip(TABLE_COLUMNS, widths)))
    for row in rows:
        cells = [_cell(row[c], 3 if c == "intensity" else 2) for c in TABLE_COLUMNS]
        print("  ".join(s.rjust(w) for s, w in zip(cells, widths)))
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(TABLE_COLUMNS)
            for row in rows:
                writer.writerow(["" if row[c] is None else row[c] if c == "scenario" else io.fmt(row[c]) for c in TABLE_COLUMNS])
    if args.figure:
        progression = {
            name: (recording, export_series(recording, ("robot", "human"), metrics))
            for name, (recording, _) in runs.items()
        }
        plotting.plot_progression(progression, args.figure)
    if args.reports:
        out = Path(args.reports)
        out.mkdir(parents=True, exist_ok=True)
        for name, (_, report) in runs.items():
            report.write(out / f"{name}.json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conflictbench",
        description="Conflict intensity, responsibility and baseline social-navigation metrics.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="simulate a catalog scenario and write a trajectory CSV")
    sim.add_argument("--scenario", required=True, choices=SCENARIOS, help="; ".join(f"{k}: {v}" for k, v in DESCRIPTIONS.items()))
    sim.add_argument("--dt", type=float, help="time step [s] (default 0.1)")
    sim.add_argument("--radius", type=float, help="agent radius [m] (default 0.5)")
    sim.add_argument("--config", type=Path, help="JSON config with metrics/sim/social_force sections")
    sim.add_argument("--out", type=Path, help="output CSV (default: stdout)")
    sim.set_defaults(func=cmd_simulate)

    ev = sub.add_parser("evaluate", help="compute all metrics for a trajectory CSV")
    ev.add_argument("--in", dest="input", required=True, type=Path, help="trajectory CSV")
    ev.add_argument("--ego", required=True, help="agent id of the robot")
    ev.add_argument("--config", type=Path, help="JSON config (a previous report also works)")
    ev.add_argument("--radius", type=float, help="agent radius [m], overrides the config")
    ev.add_argument("--out", type=Path, help="report JSON (default: stdout)")
    ev.add_argument("--series", type=Path, help="write the ego/other conflict series CSV here")
    ev.add_argument("--pair", help="other agent for --series/--figure (default: first non-ego agent)")
    ev.add_argument("--figure", type=Path, help="render the conflict series to this image file")
    ev.set_defaults(func=cmd_evaluate)

    tab = sub.add_parser("table", help="simulate s1-s4 and print the comparison table")
    tab.add_argument("--config", type=Path, help="JSON config with metrics/sim/social_force sections")
    tab.add_argument("--dt", type=float, help="time step [s]")
    tab.add_argument("--radius", type=float, help="agent radius [m]")
    tab.add_argument("--scenarios", nargs="+", choices=SCENARIOS, help="subset/order of scenarios (default s1-s4)")
    tab.add_argument("--out", type=Path, help="also write the table as full-precision CSV")
    tab.add_argument("--figure", type=Path, help="render the step-wise progression figure")
    tab.add_argument("--reports", type=Path, help="directory for one report JSON per scenario")
    tab.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
    except (FormatError, TrajectoryError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
