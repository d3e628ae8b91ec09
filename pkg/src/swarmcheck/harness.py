"""Parameter sweeps over (controller params, n, seed) and the empirical
theorem-consistency verdict.

"Bounded independent of n" is operationalized as a log-log growth slope of at
most gamma per doubling of n; per-n aggregates are medians over seeds so a
single blown-up run cannot dominate. The report carries the raw per-n tables
so stricter criteria can be applied downstream.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .engine import SEPARATION_BREACH, COHERENCE_BREACH, RunConfig, RunRecord, run
from .errors import ConfigError, InsufficientData, NumericBlowup

DEFAULT_GAMMA = 0.2

VERDICT_CONSISTENT = "consistent"
VERDICT_VIOLATED = "violated"
VERDICT_HYPOTHESES_FAILED = "hypotheses_failed"

# Floor guarding log of zero in trend fits.
_EPS_VALUE = 1e-12


@dataclass(frozen=True)
class SweepConfig:
    """A base run template swept over swarm sizes, seeds, and param values."""

    base: RunConfig
    n_values: tuple[int, ...]
    seeds_per_cell: int = 1
    param_grid: dict[str, tuple[float, ...]] = field(default_factory=dict)

    def __post_init__(self):
        n_values = tuple(int(n) for n in self.n_values)
        if len(n_values) < 2 or any(b <= a for a, b in zip(n_values, n_values[1:])):
            raise ConfigError("n_values must be strictly increasing with length >= 2")
        grid = {str(k): tuple(float(x) for x in v) for k, v in self.param_grid.items()}
        if any(len(v) == 0 for v in grid.values()):
            raise ConfigError("param_grid value lists must be non-empty")
        if self.seeds_per_cell < 1:
            raise ConfigError("seeds_per_cell must be >= 1")
        object.__setattr__(self, "n_values", n_values)
        object.__setattr__(self, "param_grid", grid)

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "n_values": list(self.n_values),
            "seeds_per_cell": self.seeds_per_cell,
            "param_grid": {k: list(v) for k, v in sorted(self.param_grid.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        for key in ("base", "n_values"):
            if key not in data:
                raise ConfigError(f"sweep config needs a '{key}' field")
        return cls(
            base=RunConfig.from_dict(data["base"]),
            n_values=tuple(data["n_values"]),
            seeds_per_cell=int(data.get("seeds_per_cell", 1)),
            param_grid={k: tuple(v) for k, v in data.get("param_grid", {}).items()},
        )


@dataclass(frozen=True)
class RunSummary:
    """Per-run extrema of the theorem's quantities, plus hypothesis status."""

    n: int
    params: dict[str, float]
    seed: int
    max_energy: float
    min_coverage: float
    min_separation_overall: float
    max_vdev_overall: float
    hypothesis_ok: bool
    failed: bool = False
    error: str | None = None

    def sort_key(self):
        return (self.n, tuple(sorted(self.params.items())), self.seed)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "params": dict(sorted(self.params.items())),
            "seed": self.seed,
            "max_energy": self.max_energy,
            "min_coverage": self.min_coverage,
            "min_separation_overall": self.min_separation_overall,
            "max_vdev_overall": self.max_vdev_overall,
            "hypothesis_ok": self.hypothesis_ok,
            "failed": self.failed,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunSummary":
        return cls(
            n=int(data["n"]),
            params={k: float(v) for k, v in data.get("params", {}).items()},
            seed=int(data["seed"]),
            max_energy=float(data["max_energy"]),
            min_coverage=float(data["min_coverage"]),
            min_separation_overall=float(data["min_separation_overall"]),
            max_vdev_overall=float(data["max_vdev_overall"]),
            hypothesis_ok=bool(data["hypothesis_ok"]),
            failed=bool(data.get("failed", False)),
            error=data.get("error"),
        )


@dataclass(frozen=True)
class RobustnessReport:
    """Per-n aggregates, trend statistics, and the consistency verdict."""

    n_values: tuple[int, ...]
    median_max_energy: tuple[float, ...]
    median_min_coverage: tuple[float, ...]
    energy_trend: float
    coverage_trend: float
    energy_bounded: bool
    coverage_floored: bool
    hypotheses_held: bool
    theorem_consistent: str
    fitted_C: float
    fitted_Cprime: float
    gamma: float
    runs_total: int
    runs_failed: int


def summarize_record(record: RunRecord, params: dict[str, float]) -> RunSummary:
    """Reduce one RunRecord to its per-run extrema.

    A degenerate-energy sample counts as unbounded energy (+inf) so it can
    never be mistaken for a favorable cell.
    """
    energies = [
        math.inf if s.energy_degenerate else s.energy for s in record.samples
    ]
    breach_kinds = {v.kind for v in record.violations}
    return RunSummary(
        n=record.config.n,
        params=dict(params),
        seed=record.config.seed,
        max_energy=float(max(energies)),
        min_coverage=float(min(s.coverage.value for s in record.samples)),
        min_separation_overall=float(min(s.min_separation for s in record.samples)),
        max_vdev_overall=float(max(s.max_velocity_deviation for s in record.samples)),
        hypothesis_ok=not (
            SEPARATION_BREACH in breach_kinds or COHERENCE_BREACH in breach_kinds
        ),
    )


def sweep_cells(sweep: SweepConfig) -> list[tuple[RunConfig, dict[str, float]]]:
    """Expand a sweep into (RunConfig, param-override) cells in canonical order.

    Canonical order is (n, sorted param items, seed); cell seeds are
    base.seed + seed_index.
    """
    names = sorted(sweep.param_grid)
    combos = [dict(zip(names, vals)) for vals in product(*(sweep.param_grid[k] for k in names))]
    combos.sort(key=lambda c: tuple(sorted(c.items())))
    if not combos:
        combos = [{}]
    base = sweep.base
    cells = []
    for n in sweep.n_values:
        for combo in combos:
            controller = base.controller
            if combo:
                merged = dict(controller.params)
                merged.update(combo)
                controller = type(controller)(
                    name=controller.name,
                    params=merged,
                    migration_velocity=controller.migration_velocity,
                )
            for seed_index in range(sweep.seeds_per_cell):
                cfg_dict = base.to_dict()
                cfg_dict["n"] = n
                cfg_dict["seed"] = base.seed + seed_index
                cfg = RunConfig.from_dict(
                    {**cfg_dict, "controller": controller.to_dict()}
                )
                cells.append((cfg, combo))
    return cells


def _run_cell(cell: tuple[RunConfig, dict[str, float]]):
    cfg, params = cell
    try:
        record = run(cfg)
    except NumericBlowup as exc:
        summary = RunSummary(
            n=cfg.n,
            params=dict(params),
            seed=cfg.seed,
            max_energy=math.nan,
            min_coverage=math.nan,
            min_separation_overall=math.nan,
            max_vdev_overall=math.nan,
            hypothesis_ok=False,
            failed=True,
            error=f"NumericBlowup: {exc} (step {exc.step_index})",
        )
        return summary, None
    return summarize_record(record, params), record


def run_sweep_with_records(
    sweep: SweepConfig, parallelism: int = 1
) -> tuple[list[RunSummary], list[RunRecord | None]]:
    """Execute every sweep cell; returns summaries and records in canonical order.

    Records are None for failed cells. Output is a pure function of the
    SweepConfig at any parallelism level: each run owns its seed-derived
    stream and results are emitted in canonical cell order.
    """
    cells = sweep_cells(sweep)
    if parallelism <= 1 or len(cells) <= 1:
        results = [_run_cell(cell) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_run_cell, cells))
    summaries = [s for s, _ in results]
    records = [r for _, r in results]
    return summaries, records


def run_sweep(sweep: SweepConfig, parallelism: int = 1) -> list[RunSummary]:
    """Execute every (n, params, seed) cell; summaries in canonical order."""
    summaries, _ = run_sweep_with_records(sweep, parallelism)
    return summaries


def trend_stat(values, n_values) -> float:
    """Least-squares slope of log2(value) against log2(n).

    The relative growth per doubling of n: 0 for a constant series, +1 when
    the value doubles per doubling, -1 when it halves. Values are floored at
    1e-12 before the log.
    """
    v = np.asarray(values, dtype=float)
    n = np.asarray(n_values, dtype=float)
    if v.shape != n.shape or v.size < 2:
        raise ConfigError("trend_stat needs matching value/n lists with >= 2 points")
    if len(set(n.tolist())) != n.size:
        raise ConfigError("trend_stat needs distinct n values")
    y = np.log2(np.maximum(v, _EPS_VALUE))
    if np.all(y == y[0]):
        return 0.0
    x = np.log2(n)
    xc = x - x.mean()
    return float((xc * (y - y.mean())).sum() / (xc * xc).sum())


def robustness_report(summaries, gamma: float = DEFAULT_GAMMA) -> RobustnessReport:
    """Aggregate sweep summaries into the empirical theorem verdict.

    energy_bounded   <=> energy_trend <= gamma
    coverage_floored <=> coverage_trend >= -gamma and fitted_Cprime > 0
    hypotheses_held  <=> every non-failed run kept both hypotheses
    verdict: hypotheses_failed when a hypothesis broke; else `violated`
    exactly when energy stayed bounded but coverage fell away; else
    `consistent` (the conclusion held, or the premise was never satisfied).
    """
    if gamma <= 0:
        raise ConfigError(f"gamma must be > 0, got {gamma}")
    summaries = list(summaries)
    ok = [s for s in summaries if not s.failed]
    by_n: dict[int, list[RunSummary]] = {}
    for s in ok:
        by_n.setdefault(s.n, []).append(s)
    if len(by_n) < 2:
        raise InsufficientData(
            f"robustness_report needs >= 2 distinct n_values, got {sorted(by_n)}"
        )
    n_values = tuple(sorted(by_n))
    med_energy = tuple(
        float(np.median([s.max_energy for s in by_n[n]])) for n in n_values
    )
    med_coverage = tuple(
        float(np.median([s.min_coverage for s in by_n[n]])) for n in n_values
    )

    energy_trend = trend_stat(med_energy, n_values)
    coverage_trend = trend_stat(med_coverage, n_values)
    fitted_c = float(max(med_energy))
    fitted_cprime = float(min(med_coverage))

    energy_bounded = energy_trend <= gamma
    coverage_floored = coverage_trend >= -gamma and fitted_cprime > 0
    hypotheses_held = all(s.hypothesis_ok for s in ok)

    if not hypotheses_held:
        verdict = VERDICT_HYPOTHESES_FAILED
    elif energy_bounded and not coverage_floored:
        verdict = VERDICT_VIOLATED
    else:
        verdict = VERDICT_CONSISTENT

    return RobustnessReport(
        n_values=n_values,
        median_max_energy=med_energy,
        median_min_coverage=med_coverage,
        energy_trend=energy_trend,
        coverage_trend=coverage_trend,
        energy_bounded=energy_bounded,
        coverage_floored=coverage_floored,
        hypotheses_held=hypotheses_held,
        theorem_consistent=verdict,
        fitted_C=fitted_c,
        fitted_Cprime=fitted_cprime,
        gamma=gamma,
        runs_total=len(summaries),
        runs_failed=len(summaries) - len(ok),
    )
