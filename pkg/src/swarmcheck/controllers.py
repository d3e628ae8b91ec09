"""Swarming control laws producing per-agent accelerations.

Five controllers are provided: a Cucker-Smale-style global alignment law, a
boids-style separation/alignment/cohesion law, a pairwise-potential law that
actively maintains inter-agent spacing, and two baselines (seeded random
accelerations, frozen). All controllers are pure functions of (state, params,
rng stream); pairwise terms are accumulated in sorted pair order with exact
per-pair antisymmetry, so alignment dynamics conserve mean velocity to
rounding precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist

from .core import SwarmState
from .errors import ConfigError, DegenerateDistance
from .grid import UniformGrid
from .metrics import EPS_SEP

CONTROLLER_NAMES = ("cucker_smale", "boids", "potential_flock", "random_walk", "static")

DEFAULT_PARAMS: dict[str, dict[str, float]] = {
    "cucker_smale": {"lambda": 1.0, "beta": 0.5},
    "boids": {
        "w_sep": 1.5,
        "w_align": 1.0,
        "w_coh": 0.8,
        "r_sep": 1.0,
        "r_neigh": 3.0,
        "w_mig": 0.5,
    },
    "potential_flock": {
        "d_star": 1.0,
        "k_pot": 1.0,
        "k_align": 0.5,
        "r_cut": 2.5,
        "w_mig": 0.5,
    },
    "random_walk": {"sigma": 1.0},
    "static": {},
}

# Memory cap for the fully broadcast (n, n, d) Cucker-Smale kernel.
_CS_BROADCAST_BYTES = 1 << 27


@dataclass(frozen=True)
class ControllerSpec:
    """Named control law, parameter set, and commanded travel velocity."""

    name: str
    params: dict[str, float] = field(default_factory=dict)
    migration_velocity: np.ndarray = field(
        default_factory=lambda: np.array([1.0, 0.0])
    )

    def __post_init__(self):
        if self.name not in CONTROLLER_NAMES:
            raise ConfigError(
                f"unknown controller {self.name!r}; expected one of {CONTROLLER_NAMES}"
            )
        merged = dict(DEFAULT_PARAMS[self.name])
        merged.update(self.params)
        extra = set(merged) - set(DEFAULT_PARAMS[self.name])
        if extra:
            raise ConfigError(f"unknown params for {self.name}: {sorted(extra)}")
        for key, value in merged.items():
            if not np.isfinite(value):
                raise ConfigError(f"param {key}={value} is not finite")
        for key in ("r_sep", "r_neigh", "r_cut"):
            if key in merged and merged[key] <= 0:
                raise ConfigError(f"interaction radius {key} must be > 0")
        mig = np.asarray(self.migration_velocity, dtype=float)
        if mig.ndim != 1 or not np.all(np.isfinite(mig)):
            raise ConfigError("migration_velocity must be a finite vector")
        object.__setattr__(self, "params", merged)
        object.__setattr__(self, "migration_velocity", mig)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": dict(sorted(self.params.items())),
            "migration_velocity": [float(v) for v in self.migration_velocity],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ControllerSpec":
        if "name" not in data:
            raise ConfigError("controller config needs a 'name'")
        return cls(
            name=data["name"],
            params={k: float(v) for k, v in data.get("params", {}).items()},
            migration_velocity=np.asarray(
                data.get("migration_velocity", [1.0, 0.0]), dtype=float
            ),
        )


def _pairs_and_dists(positions: np.ndarray, r: float):
    """Sorted (i, j, distance) arrays for all pairs within r; guards EPS_SEP."""
    pairs = UniformGrid(positions, r).pairs_within()
    if not pairs:
        empty = np.empty(0, dtype=np.intp)
        return empty, empty, np.empty(0)
    idx = np.asarray(pairs, dtype=np.intp)
    i, j = idx[:, 0], idx[:, 1]
    diff = positions[i] - positions[j]
    dist = np.sqrt((diff * diff).sum(axis=1))
    if dist.min() < EPS_SEP:
        raise DegenerateDistance(
            f"neighbor pair closer than {EPS_SEP}: min distance {dist.min():.3e}"
        )
    return i, j, dist


def cucker_smale_accel(state: SwarmState, lam: float, beta: float) -> np.ndarray:
    """Global alignment: a_i = (lam/n) sum_j psi(||x_j - x_i||) (v_j - v_i).

    psi(r) = 1 / (1 + r^2)^beta has global support, so the sum runs over all
    pairs exactly (no neighbor cutoff).
    """
    if lam < 0 or beta < 0:
        raise ConfigError(f"need lambda >= 0 and beta >= 0, got {lam}, {beta}")
    pos, vel = state.positions, state.velocities
    n, d = pos.shape
    d2 = cdist(pos, pos, metric="sqeuclidean")
    psi = (1.0 + d2) ** (-beta)
    if n * n * d * 8 <= _CS_BROADCAST_BYTES:
        dv = vel[None, :, :] - vel[:, None, :]  # dv[i, j] = v_j - v_i
        return (lam / n) * (psi[:, :, None] * dv).sum(axis=1)
    accel = np.empty_like(vel)
    for i in range(n):
        accel[i] = (lam / n) * (psi[i, :, None] * (vel - vel[i])).sum(axis=0)
    return accel


def boids_accel(
    state: SwarmState,
    w_sep: float,
    w_align: float,
    w_coh: float,
    r_sep: float,
    r_neigh: float,
    migration_velocity: np.ndarray,
    w_mig: float,
) -> np.ndarray:
    """Separation + alignment + cohesion steering with migration feedback.

    Empty neighborhoods contribute zero for their term; the migration term
    w_mig * (migration_velocity - v_i) is always active.
    """
    pos, vel = state.positions, state.velocities
    n, d = pos.shape
    accel = w_mig * (np.asarray(migration_velocity, dtype=float) - vel)

    i, j, dist = _pairs_and_dists(pos, max(r_sep, r_neigh))
    if i.size:
        diff = pos[i] - pos[j]

        sep_mask = dist <= r_sep
        if sep_mask.any():
            push = diff[sep_mask] / (dist[sep_mask] ** 2)[:, None]
            si, sj = i[sep_mask], j[sep_mask]
            np.add.at(accel, si, w_sep * push)
            np.add.at(accel, sj, -w_sep * push)

        nb_mask = dist <= r_neigh
        if nb_mask.any():
            ni, nj = i[nb_mask], j[nb_mask]
            counts = np.zeros(n)
            vel_sum = np.zeros((n, d))
            pos_sum = np.zeros((n, d))
            np.add.at(counts, ni, 1.0)
            np.add.at(counts, nj, 1.0)
            np.add.at(vel_sum, ni, vel[nj])
            np.add.at(vel_sum, nj, vel[ni])
            np.add.at(pos_sum, ni, pos[nj])
            np.add.at(pos_sum, nj, pos[ni])
            has = counts > 0
            accel[has] += w_align * (vel_sum[has] / counts[has, None] - vel[has])
            accel[has] += w_coh * (pos_sum[has] / counts[has, None] - pos[has])
    return accel


def potential_flock_accel(
    state: SwarmState,
    d_star: float,
    k_pot: float,
    k_align: float,
    r_cut: float,
    migration_velocity: np.ndarray,
    w_mig: float,
) -> np.ndarray:
    """Pairwise-potential flocking with equilibrium spacing d_star.

    For r <= r_cut the radial force magnitude is k_pot * (1/r - r/d_star^2):
    repulsive below d_star, attractive above, zero at d_star. Pair forces are
    applied with exact antisymmetry (Newton's third law); a k_align velocity
    alignment and a w_mig migration feedback act over the same neighborhood.
    """
    if d_star <= 0 or r_cut <= d_star:
        raise ConfigError(f"need r_cut > d_star > 0, got d_star={d_star}, r_cut={r_cut}")
    pos, vel = state.positions, state.velocities
    n, d = pos.shape
    accel = w_mig * (np.asarray(migration_velocity, dtype=float) - vel)

    i, j, dist = _pairs_and_dists(pos, r_cut)
    if i.size:
        magnitude = k_pot * (1.0 / dist - dist / (d_star * d_star))
        force = (magnitude / dist)[:, None] * (pos[i] - pos[j])
        np.add.at(accel, i, force)
        np.add.at(accel, j, -force)

        counts = np.zeros(n)
        vel_sum = np.zeros((n, d))
        np.add.at(counts, i, 1.0)
        np.add.at(counts, j, 1.0)
        np.add.at(vel_sum, i, vel[j])
        np.add.at(vel_sum, j, vel[i])
        has = counts > 0
        accel[has] += k_align * (vel_sum[has] / counts[has, None] - vel[has])
    return accel


def random_walk_accel(state: SwarmState, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """Isotropic i.i.d. accelerations with per-component std sigma.

    Consumes the seeded stream in agent order; the incoherent baseline.
    """
    if sigma < 0:
        raise ConfigError(f"sigma must be >= 0, got {sigma}")
    return rng.normal(0.0, sigma, size=state.positions.shape)


def static_accel(state: SwarmState) -> np.ndarray:
    """Frozen baseline: all-zero accelerations."""
    return np.zeros_like(state.positions)


def accelerations(
    spec: ControllerSpec, state: SwarmState, rng: np.random.Generator | None = None
) -> np.ndarray:
    """Dispatch to the named control law."""
    p = spec.params
    if (
        spec.name in ("boids", "potential_flock")
        and spec.migration_velocity.shape[0] != state.dim
    ):
        raise ConfigError(
            f"migration_velocity has dimension {spec.migration_velocity.shape[0]}, "
            f"state has dimension {state.dim}"
        )
    if spec.name == "cucker_smale":
        accel = cucker_smale_accel(state, lam=p["lambda"], beta=p["beta"])
    elif spec.name == "boids":
        accel = boids_accel(
            state,
            w_sep=p["w_sep"],
            w_align=p["w_align"],
            w_coh=p["w_coh"],
            r_sep=p["r_sep"],
            r_neigh=p["r_neigh"],
            migration_velocity=spec.migration_velocity,
            w_mig=p["w_mig"],
        )
    elif spec.name == "potential_flock":
        accel = potential_flock_accel(
            state,
            d_star=p["d_star"],
            k_pot=p["k_pot"],
            k_align=p["k_align"],
            r_cut=p["r_cut"],
            migration_velocity=spec.migration_velocity,
            w_mig=p["w_mig"],
        )
    elif spec.name == "random_walk":
        if rng is None:
            raise ConfigError("random_walk controller needs an rng stream")
        accel = random_walk_accel(state, sigma=p["sigma"], rng=rng)
    else:
        accel = static_accel(state)
    return accel
