"""Quantitative swarm diagnostics.

Implements the pairwise inverse-square energy, the frame potential, optimal
frame bounds, the Monte Carlo delta-ball coverage ratio, minimum separation,
and the velocity-coherence deviation, plus the one-row aggregator used by the
simulation engine.

Conventions:
  * energy of a configuration = (1 / C(n,2)) * sum_{i<j} 1 / ||x_i - x_j||^2;
    a pair closer than EPS_SEP is degenerate (coincident agents).
  * coverage is the fraction of the swarm's bounding cube within `delta` of
    at least one agent, estimated by seeded uniform sampling inside the cube
    (the ball union is clipped to the cube, so the ratio lives in [0, 1]).
  * frame metrics treat agent positions as a frame of vectors in R^d; the
    optimal frame bounds are the extreme eigenvalues of the frame operator
    S = sum_j f_j f_j^T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist, pdist

from .core import SwarmState, as_points, bounding_cube, centroid, mean_velocity
from .errors import BadDelta, DegenerateDistance, NotEnoughAgents
from .grid import UniformGrid

# Distance floor below which two agents count as coincident (m). Far below
# any physical separation, well above double-precision noise.
EPS_SEP = 1e-12

# Cube side below which the bounding cube is treated as a point and the
# coverage ratio is 1 by convention (m).
EPS_SIDE = 1e-9

# Above this many agents the coverage sampler switches from chunked
# brute-force distance checks to the uniform-grid index.
_COVERAGE_GRID_THRESHOLD = 256

_COVERAGE_CHUNK = 16384


@dataclass(frozen=True)
class FrameBounds:
    """Optimal two-sided frame bounds (extreme eigenvalues of S)."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper):
            raise ValueError(f"need 0 <= lower <= upper, got ({self.lower}, {self.upper})")

    @property
    def is_tight(self) -> bool:
        return np.isclose(self.lower, self.upper, rtol=1e-9, atol=0.0)


@dataclass(frozen=True)
class CoverageEstimate:
    """Monte Carlo estimate of the delta-ball coverage ratio."""

    value: float
    std_err: float
    samples: int
    delta: float

    def __post_init__(self):
        if not (0.0 <= self.value <= 1.0):
            raise ValueError(f"coverage must be in [0, 1], got {self.value}")
        if self.std_err < 0.0 or self.samples < 1 or self.delta <= 0.0:
            raise ValueError("invalid coverage estimate fields")


@dataclass(frozen=True)
class MetricsSample:
    """One time-stamped row of every diagnostic."""

    time: float
    energy: float  # nan when degenerate
    energy_degenerate: bool
    frame_potential: float
    frame_bounds: FrameBounds
    coverage: CoverageEstimate
    min_separation: float
    max_velocity_deviation: float
    cube_side: float


def _pairwise_sq_dists(positions) -> np.ndarray:
    """Condensed squared-distance vector in lexicographic (i, j) pair order."""
    pts = as_points(positions)
    if pts.shape[0] < 2:
        raise NotEnoughAgents(f"need at least 2 agents, got {pts.shape[0]}")
    return pdist(pts, metric="sqeuclidean")


def energy(positions) -> float:
    """Normalized inverse-square pairwise energy.

    Raises DegenerateDistance if any pair is closer than EPS_SEP, and
    NotEnoughAgents when fewer than two positions are given.
    """
    d2 = _pairwise_sq_dists(positions)
    if d2.min() < EPS_SEP * EPS_SEP:
        raise DegenerateDistance(
            f"coincident agents: min pair distance {np.sqrt(d2.min()):.3e} < {EPS_SEP}"
        )
    return float(np.sum(1.0 / d2) / d2.shape[0])


def min_separation(positions) -> float:
    """Smallest pairwise distance between agents."""
    d2 = _pairwise_sq_dists(positions)
    return float(np.sqrt(d2.min()))


def frame_potential(vectors) -> float:
    """Sum of squared inner products over all ordered pairs, self-terms included."""
    f = as_points(vectors)
    gram = f @ f.T
    return float(np.sum(gram * gram))


def frame_operator(vectors) -> np.ndarray:
    """The d x d frame operator S = sum_j f_j f_j^T."""
    f = as_points(vectors)
    return f.T @ f


def frame_bounds(vectors) -> FrameBounds:
    """Optimal frame bounds: extreme eigenvalues of the frame operator.

    A lower bound of 0 is legal and signals that the vectors fail to span R^d
    (the collection is then not a frame).
    """
    s = frame_operator(vectors)
    eigs = np.linalg.eigvalsh(s)
    lower = max(float(eigs[0]), 0.0)  # clamp eigensolver noise on PSD input
    upper = max(float(eigs[-1]), lower)
    return FrameBounds(lower=lower, upper=upper)


def max_velocity_deviation(state: SwarmState) -> float:
    """Largest norm of v_j minus the mean velocity (coherence diagnostic)."""
    dev = state.velocities - mean_velocity(state)
    return float(np.sqrt((dev * dev).sum(axis=1)).max())


def _covered_brute(samples_pts: np.ndarray, positions: np.ndarray, delta2: float) -> np.ndarray:
    covered = np.empty(samples_pts.shape[0], dtype=bool)
    for start in range(0, samples_pts.shape[0], _COVERAGE_CHUNK):
        chunk = samples_pts[start : start + _COVERAGE_CHUNK]
        d2 = cdist(chunk, positions, metric="sqeuclidean")
        covered[start : start + chunk.shape[0]] = (d2 <= delta2).any(axis=1)
    return covered


def _covered_grid(samples_pts: np.ndarray, positions: np.ndarray, delta: float) -> np.ndarray:
    grid = UniformGrid(positions, delta)
    delta2 = delta * delta
    keys = grid.keys_of(samples_pts)
    covered = np.zeros(samples_pts.shape[0], dtype=bool)
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(uniq.shape[0] + 1))
    for c in range(uniq.shape[0]):
        members = order[bounds[c] : bounds[c + 1]]
        cand = grid.indices_near(uniq[c])
        if cand.size == 0:
            continue
        d2 = cdist(samples_pts[members], positions[cand], metric="sqeuclidean")
        covered[members] = (d2 <= delta2).any(axis=1)
    return covered


def coverage_ratio(positions, delta: float, samples: int, seed: int) -> CoverageEstimate:
    """Monte Carlo delta-ball coverage ratio over the swarm's bounding cube.

    Draws `samples` points uniformly inside the bounding cube and reports the
    fraction within `delta` of some agent. A cube with side below EPS_SIDE is
    fully covered by convention. Both the brute-force and grid-indexed query
    paths evaluate the identical squared-distance predicate, so the estimate
    does not depend on which one runs.
    """
    if delta <= 0:
        raise BadDelta(f"delta must be > 0, got {delta}")
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    pts = as_points(positions)
    cube = bounding_cube(pts)
    if cube.side < EPS_SIDE:
        return CoverageEstimate(value=1.0, std_err=0.0, samples=samples, delta=delta)

    rng = np.random.default_rng(seed)
    lo = cube.center - 0.5 * cube.side
    draws = lo + cube.side * rng.random((samples, pts.shape[1]))

    if pts.shape[0] > _COVERAGE_GRID_THRESHOLD:
        covered = _covered_grid(draws, pts, delta)
    else:
        covered = _covered_brute(draws, pts, delta * delta)

    p = float(covered.mean())
    std_err = float(np.sqrt(p * (1.0 - p) / samples))
    return CoverageEstimate(value=p, std_err=std_err, samples=samples, delta=delta)


def sample_metrics(
    state: SwarmState,
    delta: float,
    mc_samples: int,
    seed: int,
    center_frames: bool = True,
    ball_delta: float | None = None,
) -> MetricsSample:
    """Populate one MetricsSample row for the given state.

    Frame metrics are computed on centroid-centered positions unless
    `center_frames` is off; a coincident pair is recorded as a degenerate
    energy flag rather than a failure so runs can continue. `ball_delta`
    overrides the coverage ball radius (defaults to the separation delta).
    """
    if state.n < 2:
        raise NotEnoughAgents(f"metrics need n >= 2, got {state.n}")
    pos = state.positions
    d2 = _pairwise_sq_dists(pos)

    degenerate = bool(d2.min() < EPS_SEP * EPS_SEP)
    e = float("nan") if degenerate else float(np.sum(1.0 / d2) / d2.shape[0])

    frame_vectors = pos - centroid(pos) if center_frames else pos
    fb = frame_bounds(frame_vectors)
    fp = frame_potential(frame_vectors)

    radius = delta if ball_delta is None else ball_delta
    cov = coverage_ratio(pos, radius, mc_samples, seed)
    cube = bounding_cube(pos)

    return MetricsSample(
        time=float(state.time),
        energy=e,
        energy_degenerate=degenerate,
        frame_potential=fp,
        frame_bounds=fb,
        coverage=cov,
        min_separation=float(np.sqrt(d2.min())),
        max_velocity_deviation=max_velocity_deviation(state),
        cube_side=cube.side,
    )
