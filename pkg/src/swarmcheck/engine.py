"""Deterministic time-stepping of a swarm under a controller.

A run is strictly sequential: semi-implicit Euler with a speed clamp, metric
sampling every `metrics_every` steps (plus an initial sample at t = 0), and
hypothesis policing at sample times. All randomness derives from the run's
single seed, so an identical RunConfig reproduces an identical RunRecord.
"""

from __future__ import annotations

import time as _time
from dataclasses import dataclass

import numpy as np

from .controllers import ControllerSpec, accelerations
from .core import SwarmState
from .errors import ConfigError, NumericBlowup
from .grid import UniformGrid
from .metrics import MetricsSample, sample_metrics
from .scenarios import Scenario, make_scenario

PRNG_NAME = "numpy-pcg64"

SEPARATION_BREACH = "separation_breach"
COHERENCE_BREACH = "coherence_breach"
DEGENERATE_ENERGY = "degenerate_energy"


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one simulation run."""

    scenario: Scenario
    controller: ControllerSpec
    n: int
    d: int = 2
    dt: float = 0.01
    steps: int = 0
    metrics_every: int = 10
    delta: float = 1.0
    coherence_c: float = 0.1
    mc_samples: int = 65536
    seed: int = 0
    v_max: float = 5.0
    ball_delta: float | None = None  # coverage ball radius; None means delta

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError(f"need n >= 2 agents, got {self.n}")
        if self.d < 1:
            raise ConfigError(f"need d >= 1, got {self.d}")
        if self.dt <= 0 or self.steps < 0 or self.metrics_every < 1:
            raise ConfigError("need dt > 0, steps >= 0, metrics_every >= 1")
        if self.delta <= 0 or self.coherence_c <= 0 or self.v_max <= 0:
            raise ConfigError("need delta > 0, coherence_c > 0, v_max > 0")
        if self.mc_samples < 1:
            raise ConfigError("need mc_samples >= 1")
        if self.ball_delta is not None and self.ball_delta <= 0:
            raise ConfigError("ball_delta must be > 0 when given")

    def to_dict(self) -> dict:
        out = {
            "scenario": self.scenario.to_dict(),
            "controller": self.controller.to_dict(),
            "n": self.n,
            "d": self.d,
            "dt": self.dt,
            "steps": self.steps,
            "metrics_every": self.metrics_every,
            "delta": self.delta,
            "coherence_c": self.coherence_c,
            "mc_samples": self.mc_samples,
            "seed": self.seed,
            "v_max": self.v_max,
        }
        if self.ball_delta is not None:
            out["ball_delta"] = self.ball_delta
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        for key in ("scenario", "controller", "n"):
            if key not in data:
                raise ConfigError(f"run config needs a '{key}' field")
        kwargs = {k: v for k, v in data.items() if k not in ("scenario", "controller")}
        try:
            return cls(
                scenario=Scenario.from_dict(data["scenario"]),
                controller=ControllerSpec.from_dict(data["controller"]),
                **kwargs,
            )
        except TypeError as exc:
            raise ConfigError(f"bad run config: {exc}") from None


@dataclass(frozen=True)
class Violation:
    """A theorem-hypothesis breach observed at a sample time."""

    time: float
    kind: str


@dataclass
class RunRecord:
    """Config plus the full metric time series for one run.

    wall_time is informational only and is never serialized, so emitted
    artifacts stay byte-identical across repeated runs.
    """

    config: RunConfig
    samples: list[MetricsSample]
    violations: list[Violation]
    wall_time: float
    prng_name: str = PRNG_NAME


def neighbors_within(positions, r: float) -> list[tuple[int, int]]:
    """Unordered index pairs (i < j) within distance r, sorted lexicographically."""
    if r <= 0:
        raise ConfigError(f"need r > 0, got {r}")
    pts = np.asarray(positions, dtype=float)
    return UniformGrid(pts, r).pairs_within()


def integrate(
    positions: np.ndarray,
    velocities: np.ndarray,
    accel: np.ndarray,
    dt: float,
    v_max: float = np.inf,
) -> tuple[np.ndarray, np.ndarray]:
    """Semi-implicit Euler update with a speed clamp.

    v' = clamp(v + a dt, ||.|| <= v_max); x' = x + v' dt. The clamp rescales
    to v_max preserving direction.
    """
    vel = velocities + accel * dt
    speed = np.sqrt((vel * vel).sum(axis=1))
    over = speed > v_max
    if over.any():
        vel = vel.copy()
        vel[over] *= (v_max / speed[over])[:, None]
    pos = positions + vel * dt
    return pos, vel


def step(
    state: SwarmState,
    controller: ControllerSpec,
    dt: float,
    rng: np.random.Generator | None = None,
    v_max: float = np.inf,
) -> SwarmState:
    """Advance one time step under the controller.

    Raises NumericBlowup when the update produces a non-finite component
    (the usual sign of unstable parameters).
    """
    if dt <= 0:
        raise ConfigError(f"need dt > 0, got {dt}")
    # Overflow/invalid here is the handled blowup condition, not a bug signal.
    with np.errstate(over="ignore", invalid="ignore"):
        accel = accelerations(controller, state, rng)
        pos, vel = integrate(state.positions, state.velocities, accel, dt, v_max)
    if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(vel))):
        raise NumericBlowup("non-finite component after step")
    return SwarmState(time=state.time + dt, positions=pos, velocities=vel)


def _coverage_seed(seed: int) -> int:
    """Stable coverage Monte Carlo seed derived from the run seed.

    One seed for the whole run (not per sample): a static run must produce
    bit-identical metric rows, and common draws across sample times also
    reduce the variance of coverage differences.
    """
    ss = np.random.SeedSequence((seed, 2))
    return int(ss.generate_state(1, np.uint64)[0])


def run(config: RunConfig) -> RunRecord:
    """Execute a full simulation run: init, step, sample, police hypotheses.

    Violations recorded at sample times: separation_breach when
    min_separation < delta, coherence_breach when max_velocity_deviation >=
    coherence_c * delta, degenerate_energy when a pair is coincident.
    """
    t0 = _time.perf_counter()
    state = make_scenario(config.scenario, config.n, config.d, seed=config.seed)
    dyn_rng = np.random.default_rng(np.random.SeedSequence((config.seed, 1)))

    samples: list[MetricsSample] = []
    violations: list[Violation] = []
    cov_seed = _coverage_seed(config.seed)

    def take_sample(s: SwarmState):
        ms = sample_metrics(
            s,
            delta=config.delta,
            mc_samples=config.mc_samples,
            seed=cov_seed,
            ball_delta=config.ball_delta,
        )
        samples.append(ms)
        if ms.min_separation < config.delta:
            violations.append(Violation(time=ms.time, kind=SEPARATION_BREACH))
        if ms.max_velocity_deviation >= config.coherence_c * config.delta:
            violations.append(Violation(time=ms.time, kind=COHERENCE_BREACH))
        if ms.energy_degenerate:
            violations.append(Violation(time=ms.time, kind=DEGENERATE_ENERGY))

    take_sample(state)
    for step_index in range(1, config.steps + 1):
        try:
            state = step(state, config.controller, config.dt, dyn_rng, config.v_max)
        except NumericBlowup as exc:
            raise NumericBlowup(
                f"non-finite component at step {step_index}", step_index=step_index
            ) from exc
        if step_index % config.metrics_every == 0:
            take_sample(state)

    return RunRecord(
        config=config,
        samples=samples,
        violations=violations,
        wall_time=_time.perf_counter() - t0,
    )
