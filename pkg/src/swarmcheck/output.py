"""File emission: run CSV/JSONL, sidecar JSON, summaries, and the report.

Every emission is a deterministic function of its inputs: fixed column and
field order, shortest-round-trip float rendering (Python repr), no
timestamps. Parsing an emitted CSV recovers every float bit-for-bit.
"""

from __future__ import annotations

import json
from pathlib import Path

from ._version import VERSION
from .engine import RunRecord
from .harness import RobustnessReport, RunSummary
from .metrics import MetricsSample

CSV_HEADER = "t,energy,frame_potential,frame_A,frame_B,coverage,coverage_stderr,min_sep,max_vdev,cube_side"


def fmt_float(x: float) -> str:
    """Shortest decimal rendering that round-trips to the same float64."""
    return repr(float(x))


def _sample_fields(sample: MetricsSample) -> dict[str, float]:
    return {
        "t": sample.time,
        "energy": float("nan") if sample.energy_degenerate else sample.energy,
        "frame_potential": sample.frame_potential,
        "frame_A": sample.frame_bounds.lower,
        "frame_B": sample.frame_bounds.upper,
        "coverage": sample.coverage.value,
        "coverage_stderr": sample.coverage.std_err,
        "min_sep": sample.min_separation,
        "max_vdev": sample.max_velocity_deviation,
        "cube_side": sample.cube_side,
    }


def emit_run_csv(record: RunRecord, destination) -> None:
    """One row per MetricsSample under the fixed header.

    Degenerate energy prints as `nan`; the corresponding violation is logged
    in the sidecar JSON, keeping the CSV numerically parseable.
    """
    lines = [CSV_HEADER]
    for sample in record.samples:
        lines.append(",".join(fmt_float(v) for v in _sample_fields(sample).values()))
    Path(destination).write_text("\n".join(lines) + "\n")


def emit_run_jsonl(record: RunRecord, destination) -> None:
    """One MetricsSample object per line, mirroring the CSV columns."""
    lines = [json.dumps(_sample_fields(sample)) for sample in record.samples]
    Path(destination).write_text("\n".join(lines) + "\n")


def emit_run_sidecar(record: RunRecord, destination) -> None:
    """Config, violations, and provenance for one run (no wall time)."""
    payload = {
        "tool": "swarmcheck",
        "version": VERSION,
        "prng_name": record.prng_name,
        "config": record.config.to_dict(),
        "violations": [{"t": v.time, "kind": v.kind} for v in record.violations],
    }
    Path(destination).write_text(json.dumps(payload, indent=2) + "\n")


def parse_run_csv(path) -> list[dict[str, float]]:
    """Read back an emitted run CSV as per-row {column: float} dicts."""
    text = Path(path).read_text().strip().splitlines()
    if not text or text[0] != CSV_HEADER:
        raise ValueError(f"{path}: unexpected CSV header")
    columns = CSV_HEADER.split(",")
    return [dict(zip(columns, map(float, line.split(",")))) for line in text[1:]]


def write_summaries_jsonl(summaries: list[RunSummary], destination) -> None:
    """One RunSummary object per line, in the canonical sweep order."""
    lines = [json.dumps(s.to_dict()) for s in summaries]
    Path(destination).write_text("\n".join(lines) + "\n")


def read_summaries_jsonl(path) -> list[RunSummary]:
    lines = Path(path).read_text().strip().splitlines()
    return [RunSummary.from_dict(json.loads(line)) for line in lines if line]


def report_payload(report: RobustnessReport) -> dict:
    """The report as a stably-ordered plain dict (the JSON field order)."""
    return {
        "tool": "swarmcheck",
        "version": VERSION,
        "gamma": report.gamma,
        "n_values": list(report.n_values),
        "per_n": [
            {
                "n": n,
                "median_max_energy": e,
                "median_min_coverage": c,
            }
            for n, e, c in zip(
                report.n_values, report.median_max_energy, report.median_min_coverage
            )
        ],
        "energy_trend": report.energy_trend,
        "coverage_trend": report.coverage_trend,
        "energy_bounded": report.energy_bounded,
        "coverage_floored": report.coverage_floored,
        "hypotheses_held": report.hypotheses_held,
        "fitted_C": report.fitted_C,
        "fitted_Cprime": report.fitted_Cprime,
        "runs_total": report.runs_total,
        "runs_failed": report.runs_failed,
        "theorem_consistent": report.theorem_consistent,
    }


def emit_report_json(report: RobustnessReport, destination) -> None:
    """Stable-order JSON report with verdicts, trends, and fitted constants."""
    Path(destination).write_text(json.dumps(report_payload(report), indent=2) + "\n")
