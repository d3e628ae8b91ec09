"""Core state types and elementary geometric reductions.

Positions and velocities are plain float64 arrays of shape (n, d); the row
index is the agent id and is stable for the whole run, so every reduction
iterates in a fixed order and results are reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotEnoughAgents

# Relative tolerance for "cube contains the swarm" style containment checks.
CONTAINMENT_RTOL = 1e-12


def as_points(x) -> np.ndarray:
    """Coerce a SwarmState or array-like into a finite float64 (n, d) array."""
    if isinstance(x, SwarmState):
        return x.positions
    try:
        pts = np.asarray(x, dtype=float)
    except ValueError as exc:  # ragged nested sequences
        raise DimensionMismatch(f"vectors disagree on dimension: {exc}") from None
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    if pts.ndim != 2 or pts.shape[1] < 1:
        raise DimensionMismatch(f"expected an (n, d) point array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("positions contain non-finite components")
    return pts


@dataclass(frozen=True)
class AgentState:
    """Position (m) and velocity (m/s) of a single agent."""

    position: np.ndarray
    velocity: np.ndarray


@dataclass(frozen=True)
class SwarmState:
    """Positions and velocities of n agents in R^d at one instant.

    Invariants: n >= 1, positions/velocities share shape (n, d), time >= 0,
    every component finite.
    """

    time: float
    positions: np.ndarray
    velocities: np.ndarray

    def __post_init__(self):
        pos = np.ascontiguousarray(np.asarray(self.positions, dtype=float))
        vel = np.ascontiguousarray(np.asarray(self.velocities, dtype=float))
        if pos.ndim != 2 or pos.shape[0] < 1 or pos.shape[1] < 1:
            raise NotEnoughAgents(f"positions must be (n>=1, d>=1), got shape {pos.shape}")
        if vel.shape != pos.shape:
            raise DimensionMismatch(
                f"velocities shape {vel.shape} != positions shape {pos.shape}"
            )
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(vel))):
            raise ValueError("state contains non-finite components")
        if not (self.time >= 0.0 and np.isfinite(self.time)):
            raise ValueError(f"time must be finite and >= 0, got {self.time}")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "velocities", vel)

    @property
    def n(self) -> int:
        return self.positions.shape[0]

    @property
    def dim(self) -> int:
        return self.positions.shape[1]

    def agent(self, i: int) -> AgentState:
        return AgentState(self.positions[i].copy(), self.velocities[i].copy())


@dataclass(frozen=True)
class Cube:
    """Axis-aligned cube: center (m) and side length (m), side >= 0."""

    center: np.ndarray
    side: float

    def __post_init__(self):
        center = np.asarray(self.center, dtype=float)
        if self.side < 0:
            raise ValueError(f"cube side must be >= 0, got {self.side}")
        object.__setattr__(self, "center", center)

    def contains(self, points, rtol: float = CONTAINMENT_RTOL) -> bool:
        """True if every point lies within side/2 of the center per axis."""
        pts = as_points(points)
        half = 0.5 * self.side
        slack = rtol * max(1.0, abs(half))
        return bool(np.all(np.abs(pts - self.center) <= half + slack))


def centroid(state_or_points) -> np.ndarray:
    """Component-wise mean of positions."""
    pts = as_points(state_or_points)
    return pts.mean(axis=0)


def mean_velocity(state: SwarmState) -> np.ndarray:
    """Component-wise mean of velocities (the swarm's average heading)."""
    return state.velocities.mean(axis=0)


def bounding_cube(state_or_points) -> Cube:
    """Smallest axis-aligned cube containing all positions.

    Side is the largest per-axis extent; the center is the midpoint of the
    axis-aligned bounding box. Side 0 is legal when all positions coincide.
    """
    pts = as_points(state_or_points)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    side = float((hi - lo).max())
    center = 0.5 * (lo + hi)
    return Cube(center=center, side=side)
