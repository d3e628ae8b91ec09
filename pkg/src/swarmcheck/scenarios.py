"""Initial-condition generators for runs and sweeps.

Four families: `grid` lattices, collinear `line` configurations (optionally
with spacing shrinking as 1/n to provoke size-dependent energy), a
`two_clusters` dispersal probe whose gap may grow linearly with n, and an
i.i.d. `uniform_box`. Generation is deterministic given (scenario, n, d,
seed).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import SwarmState
from .errors import ConfigError

SCENARIO_KINDS = ("grid", "line", "two_clusters", "uniform_box")
GAP_GROWTH = ("fixed", "linear_in_n")
SPACING_GROWTH = ("fixed", "inverse_n")


@dataclass(frozen=True)
class Scenario:
    """Declarative initial-condition spec consumed by make_scenario."""

    kind: str
    spacing: float = 1.0
    extent: float = 1.0
    cluster_gap: float = 10.0
    gap_growth: str = "fixed"
    spacing_growth: str = "fixed"
    initial_velocity: np.ndarray = None
    jitter: float = 0.0
    velocity_jitter: float = 0.0

    def __post_init__(self):
        if self.kind not in SCENARIO_KINDS:
            raise ConfigError(f"unknown scenario kind {self.kind!r}; expected {SCENARIO_KINDS}")
        if self.gap_growth not in GAP_GROWTH:
            raise ConfigError(f"gap_growth must be one of {GAP_GROWTH}")
        if self.spacing_growth not in SPACING_GROWTH:
            raise ConfigError(f"spacing_growth must be one of {SPACING_GROWTH}")
        if self.spacing <= 0 or self.extent <= 0:
            raise ConfigError("spacing and extent must be > 0")
        if self.jitter < 0 or self.velocity_jitter < 0:
            raise ConfigError("jitter values must be >= 0")
        vel = self.initial_velocity
        vel = np.array([1.0, 0.0]) if vel is None else np.asarray(vel, dtype=float)
        if vel.ndim != 1 or not np.all(np.isfinite(vel)):
            raise ConfigError("initial_velocity must be a finite vector")
        object.__setattr__(self, "initial_velocity", vel)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "spacing": self.spacing,
            "extent": self.extent,
            "cluster_gap": self.cluster_gap,
            "gap_growth": self.gap_growth,
            "spacing_growth": self.spacing_growth,
            "initial_velocity": [float(v) for v in self.initial_velocity],
            "jitter": self.jitter,
            "velocity_jitter": self.velocity_jitter,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        if "kind" not in data:
            raise ConfigError("scenario config needs a 'kind'")
        kwargs = {k: data[k] for k in data if k != "initial_velocity"}
        if "initial_velocity" in data:
            kwargs["initial_velocity"] = np.asarray(data["initial_velocity"], dtype=float)
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(f"bad scenario config: {exc}") from None


def _int_root_ceil(n: int, d: int) -> int:
    """Smallest m with m**d >= n, computed without float-power pitfalls."""
    m = max(1, round(n ** (1.0 / d)))
    while m**d < n:
        m += 1
    while m > 1 and (m - 1) ** d >= n:
        m -= 1
    return m


def _lattice(n: int, d: int, spacing: float) -> np.ndarray:
    """First n points of an m-per-side lattice, in lexicographic fill order."""
    m = _int_root_ceil(n, d)
    pts = np.array(list(product(range(m), repeat=d))[:n], dtype=float)
    return pts * spacing


def make_scenario(scenario: Scenario, n: int, d: int, seed: int) -> SwarmState:
    """Build the initial SwarmState for n agents in R^d."""
    if n < 1 or d < 1:
        raise ConfigError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    if scenario.initial_velocity.shape[0] != d:
        raise ConfigError(
            f"initial_velocity has dimension {scenario.initial_velocity.shape[0]}, "
            f"scenario asked for d={d}"
        )
    rng = np.random.default_rng(seed)
    spacing = scenario.spacing
    if scenario.spacing_growth == "inverse_n":
        spacing = scenario.spacing / n

    if scenario.kind == "grid":
        pos = _lattice(n, d, spacing)
    elif scenario.kind == "line":
        pos = np.zeros((n, d))
        pos[:, 0] = spacing * np.arange(n)
    elif scenario.kind == "two_clusters":
        gap = scenario.cluster_gap * (n if scenario.gap_growth == "linear_in_n" else 1)
        n_a = (n + 1) // 2
        cluster_a = _lattice(n_a, d, spacing)
        cluster_a -= cluster_a.mean(axis=0)
        cluster_a[:, 0] -= 0.5 * gap
        pos = cluster_a
        if n - n_a > 0:
            cluster_b = _lattice(n - n_a, d, spacing)
            cluster_b -= cluster_b.mean(axis=0)
            cluster_b[:, 0] += 0.5 * gap
            pos = np.concatenate([cluster_a, cluster_b])
    else:  # uniform_box
        pos = scenario.extent * rng.random((n, d))

    if scenario.jitter > 0 and scenario.kind in ("grid", "line", "two_clusters"):
        pos = pos + rng.uniform(-scenario.jitter, scenario.jitter, size=(n, d))

    vel = np.tile(scenario.initial_velocity, (n, 1))
    if scenario.velocity_jitter > 0:
        vel = vel + rng.uniform(
            -scenario.velocity_jitter, scenario.velocity_jitter, size=(n, d)
        )
    return SwarmState(time=0.0, positions=pos, velocities=vel)
