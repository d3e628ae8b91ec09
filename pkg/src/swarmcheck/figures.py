"""Diagnostic SVG charts rendered next to the delimited outputs.

Charts are standalone 800x600 SVG line plots: metric vs time for a run,
per-n median vs log2(n) for a report. Rendering is deterministic (fixed SVG
hash salt, no date metadata) and text stays as SVG text elements. Each
series' polyline is tagged with a stable `id` so emitted coordinates can be
checked programmatically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import matplotlib
import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from .engine import RunRecord
from .harness import RobustnessReport
from .output import _sample_fields

_SVG_RC = {"svg.hashsalt": "swarmcheck", "svg.fonttype": "none"}

RUN_METRICS = (
    "energy",
    "frame_potential",
    "coverage",
    "min_sep",
    "max_vdev",
    "cube_side",
)


@dataclass(frozen=True)
class Series:
    """One labelled polyline."""

    label: str
    x: np.ndarray
    y: np.ndarray


def _slug(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "-", label).strip("-").lower() or "series"


def run_series(record: RunRecord, metric: str, label: str | None = None) -> Series:
    """Metric vs sample time for one run; metric names match the CSV columns."""
    if metric not in RUN_METRICS:
        raise ValueError(f"unknown run metric {metric!r}; expected one of {RUN_METRICS}")
    rows = [_sample_fields(s) for s in record.samples]
    x = np.array([r["t"] for r in rows])
    y = np.array([r[metric] for r in rows])
    return Series(label=label or metric, x=x, y=y)


def report_series(report: RobustnessReport, metric: str) -> Series:
    """Per-n median vs log2(n) for a sweep report.

    Metrics: `energy` (median of per-run max energy) or `coverage` (median
    of per-run min coverage).
    """
    if metric == "energy":
        y = np.array(report.median_max_energy)
        label = "median max energy"
    elif metric == "coverage":
        y = np.array(report.median_min_coverage)
        label = "median min coverage"
    else:
        raise ValueError(f"unknown report metric {metric!r}; expected 'energy' or 'coverage'")
    x = np.log2(np.array(report.n_values, dtype=float))
    return Series(label=label, x=x, y=y)


def render_svg(
    series: list[Series],
    destination,
    xlabel: str,
    ylabel: str,
    title: str | None = None,
    logy: bool = False,
) -> None:
    """Render labelled polylines to a standalone 800x600 SVG file.

    Raises ValueError (and writes nothing) when the series list is empty.
    """
    if not series:
        raise ValueError("no series to plot")
    with matplotlib.rc_context(_SVG_RC):
        # 800 x 600 SVG user units (the backend writes 72 units per inch).
        fig = Figure(figsize=(800 / 72.0, 600 / 72.0), dpi=72)
        FigureCanvasSVG(fig)
        ax = fig.add_subplot(1, 1, 1)
        for i, s in enumerate(series):
            ax.plot(s.x, s.y, label=s.label, gid=f"series-{i}-{_slug(s.label)}")
        if logy:
            ax.set_yscale("log", base=2)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        ax.grid(True, linestyle=":", alpha=0.6)
        ax.legend(loc="best")
        fig.savefig(destination, format="svg", metadata={"Date": None})


def render_run_figures(record: RunRecord, out_dir, stem: str = "run") -> list:
    """Write the energy and coverage time-series charts for one run."""
    paths = []
    for metric, ylabel in (("energy", "pairwise energy"), ("coverage", "coverage ratio")):
        path = out_dir / f"{stem}_{metric}.svg"
        render_svg(
            [run_series(record, metric)],
            path,
            xlabel="t [s]",
            ylabel=ylabel,
            title=f"{metric} vs time",
        )
        paths.append(path)
    return paths


def render_report_figures(report: RobustnessReport, out_dir, stem: str = "report") -> list:
    """Write per-n median charts (energy on a log axis, coverage linear)."""
    jobs = (
        ("energy", "median max energy", bool(np.all(np.array(report.median_max_energy) > 0))),
        ("coverage", "median min coverage", False),
    )
    paths = []
    for metric, ylabel, logy in jobs:
        path = out_dir / f"{stem}_{metric}.svg"
        render_svg(
            [report_series(report, metric)],
            path,
            xlabel="log2(n)",
            ylabel=ylabel,
            title=f"{ylabel} vs swarm size",
            logy=logy,
        )
        paths.append(path)
    return paths
