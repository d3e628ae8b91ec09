"""Command-line entry point.

Three subcommands: `simulate` (one run -> CSV/JSONL + sidecar + optional
SVG), `sweep` (grid of runs -> per-run files, summary JSONL, report JSON),
and `report` (re-aggregate summaries -> report JSON + optional SVG, with a
--strict mode for CI gating).

Exit codes: 0 success, 1 config/usage error, 2 runtime/numeric failure,
3 strict report with a `violated` verdict. The SWARMCHECK_SEED environment
variable overrides the config seed; an explicit --seed flag wins over both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ._version import VERSION
from .engine import RunConfig, run
from .errors import ConfigError, InsufficientData, SwarmCheckError
from .figures import render_report_figures, render_run_figures
from .harness import (
    DEFAULT_GAMMA,
    SweepConfig,
    robustness_report,
    run_sweep_with_records,
)
from .output import (
    emit_report_json,
    emit_run_csv,
    emit_run_jsonl,
    emit_run_sidecar,
    read_summaries_jsonl,
    write_summaries_jsonl,
)

SEED_ENV_VAR = "SWARMCHECK_SEED"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2
EXIT_VIOLATED = 3


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that reports usage problems as ConfigError (exit code 1)."""

    def error(self, message):
        raise ConfigError(message)


def _load_json(path) -> dict:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{p}: invalid JSON: {exc}") from None


def _seed_override(flag_seed: int | None) -> int | None:
    """Seed precedence: --seed flag, then SWARMCHECK_SEED, then the config."""
    if flag_seed is not None:
        return flag_seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from None
    return None


def _cmd_simulate(args) -> int:
    data = _load_json(args.config)
    seed = _seed_override(args.seed)
    if seed is not None:
        data["seed"] = seed
    if args.delta is not None:
        data["delta"] = args.delta
    if args.ball_delta is not None:
        data["ball_delta"] = args.ball_delta
    config = RunConfig.from_dict(data)

    record = run(config)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.format == "csv":
        data_path = out_dir / "run.csv"
        emit_run_csv(record, data_path)
    else:
        data_path = out_dir / "run.jsonl"
        emit_run_jsonl(record, data_path)
    sidecar_path = out_dir / "run.json"
    emit_run_sidecar(record, sidecar_path)
    written = [data_path, sidecar_path]
    if args.svg:
        written.extend(render_run_figures(record, out_dir))

    last = record.samples[-1]
    print(
        f"run: n={config.n} steps={config.steps} samples={len(record.samples)} "
        f"violations={len(record.violations)}"
    )
    print(
        f"final: energy={last.energy:.6g} coverage={last.coverage.value:.4f} "
        f"min_sep={last.min_separation:.6g}"
    )
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    data = _load_json(args.config)
    seed = _seed_override(None)
    if seed is not None:
        data.setdefault("base", {})["seed"] = seed
    sweep = SweepConfig.from_dict(data)

    summaries, records = run_sweep_with_records(sweep, parallelism=args.jobs)

    out_dir = Path(args.out)
    runs_dir = out_dir / "runs"
    runs_dir.mkdir(parents=True, exist_ok=True)
    width = max(4, len(str(len(records))))
    for idx, record in enumerate(records):
        if record is None:
            continue
        stem = f"run_{idx:0{width}d}"
        emit_run_csv(record, runs_dir / f"{stem}.csv")
        emit_run_sidecar(record, runs_dir / f"{stem}.json")

    summary_path = out_dir / "summary.jsonl"
    write_summaries_jsonl(summaries, summary_path)
    report = robustness_report(summaries, gamma=args.gamma)
    report_path = out_dir / "report.json"
    emit_report_json(report, report_path)

    failed = [s for s in summaries if s.failed]
    print(f"sweep: {len(summaries)} cells, {len(failed)} failed")
    for s in failed:
        print(f"  failed cell n={s.n} seed={s.seed}: {s.error}", file=sys.stderr)
    print(f"verdict: {report.theorem_consistent}")
    print(f"wrote {summary_path}")
    print(f"wrote {report_path}")
    return EXIT_OK


def _cmd_report(args) -> int:
    in_dir = Path(args.in_dir)
    summary_path = in_dir / "summary.jsonl"
    if not summary_path.exists():
        raise ConfigError(f"no summary.jsonl in {in_dir}")
    summaries = read_summaries_jsonl(summary_path)
    report = robustness_report(summaries, gamma=args.gamma)

    out_path = Path(args.out) if args.out else in_dir / "report.json"
    emit_report_json(report, out_path)
    written = [out_path]
    if args.svg:
        written.extend(render_report_figures(report, out_path.parent))

    print(f"n_values: {list(report.n_values)}")
    print(
        f"energy_trend={report.energy_trend:.4f} coverage_trend={report.coverage_trend:.4f} "
        f"fitted_C={report.fitted_C:.6g} fitted_Cprime={report.fitted_Cprime:.6g}"
    )
    print(f"verdict: {report.theorem_consistent}")
    for path in written:
        print(f"wrote {path}")
    if args.strict and report.theorem_consistent == "violated":
        print("strict mode: verdict is 'violated'", file=sys.stderr)
        return EXIT_VIOLATED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="swarmcheck",
        description="Swarm simulator and reliability-qualification harness.",
    )
    parser.add_argument("--version", action="version", version=f"swarmcheck {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one simulation from a JSON config")
    sim.add_argument("--config", required=True, help="RunConfig JSON file")
    sim.add_argument("--seed", type=int, default=None, help="override the config seed")
    sim.add_argument("--out", default=".", help="output directory (default: cwd)")
    sim.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    sim.add_argument("--svg", action="store_true", help="also render SVG charts")
    sim.add_argument("--delta", type=float, default=None, help="override separation delta")
    sim.add_argument(
        "--ball-delta",
        dest="ball_delta",
        type=float,
        default=None,
        help="override the coverage ball radius (defaults to delta)",
    )

    swp = sub.add_parser("sweep", help="run a parameter sweep from a JSON config")
    swp.add_argument("--config", required=True, help="SweepConfig JSON file")
    swp.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    swp.add_argument("--out", default=".", help="output directory (default: cwd)")
    swp.add_argument("--gamma", type=float, default=DEFAULT_GAMMA)

    rep = sub.add_parser("report", help="aggregate sweep summaries into a verdict")
    rep.add_argument("--in", dest="in_dir", required=True, help="sweep output directory")
    rep.add_argument("--out", default=None, help="report path (default: <in>/report.json)")
    rep.add_argument("--svg", action="store_true", help="also render SVG charts")
    rep.add_argument("--strict", action="store_true", help="exit 3 on a 'violated' verdict")
    rep.add_argument("--gamma", type=float, default=DEFAULT_GAMMA)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_report(args)
    except (ConfigError, InsufficientData) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SwarmCheckError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
