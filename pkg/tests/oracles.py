"""Independent brute-force oracles used to check the library's fast paths.

Everything here is a direct transcription of a definition: double loops over
pairs, explicit Gram sums, per-point distance scans. No function in this
module may call into the code path it is used to verify.
"""

from __future__ import annotations

import math

import numpy as np


def pair_sq_dist(a, b) -> float:
    total = 0.0
    for k in range(len(a)):
        diff = a[k] - b[k]
        total += diff * diff
    return total


def brute_energy(positions) -> float:
    pts = np.asarray(positions, dtype=float)
    n = len(pts)
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            total += 1.0 / pair_sq_dist(pts[i], pts[j])
    return total / math.comb(n, 2)


def brute_min_separation(positions) -> float:
    pts = np.asarray(positions, dtype=float)
    n = len(pts)
    best = math.inf
    for i in range(n):
        for j in range(i + 1, n):
            best = min(best, math.sqrt(pair_sq_dist(pts[i], pts[j])))
    return best


def brute_max_velocity_deviation(velocities) -> float:
    vel = np.asarray(velocities, dtype=float)
    avg = vel.mean(axis=0)
    best = 0.0
    for j in range(len(vel)):
        best = max(best, math.sqrt(pair_sq_dist(vel[j], avg)))
    return best


def brute_pairs_within(positions, r) -> list[tuple[int, int]]:
    pts = np.asarray(positions, dtype=float)
    n = len(pts)
    r2 = r * r
    return sorted(
        (i, j) for i in range(n) for j in range(i + 1, n) if pair_sq_dist(pts[i], pts[j]) <= r2
    )


def brute_covered_fraction(positions, delta, points) -> float:
    """Fraction of sample points within delta of at least one position."""
    pts = np.asarray(positions, dtype=float)
    delta2 = delta * delta
    hits = 0
    for q in np.asarray(points, dtype=float):
        if any(pair_sq_dist(q, p) <= delta2 for p in pts):
            hits += 1
    return hits / len(points)


def brute_frame_potential(vectors) -> float:
    f = np.asarray(vectors, dtype=float)
    total = 0.0
    for i in range(len(f)):
        for j in range(len(f)):
            ip = 0.0
            for k in range(f.shape[1]):
                ip += f[i, k] * f[j, k]
            total += ip * ip
    return total


def brute_frame_operator(vectors) -> np.ndarray:
    f = np.asarray(vectors, dtype=float)
    s = np.zeros((f.shape[1], f.shape[1]))
    for j in range(len(f)):
        s += np.outer(f[j], f[j])
    return s


def analysis_sum(vectors, y) -> float:
    """sum_j <y, f_j>^2 evaluated term by term."""
    f = np.asarray(vectors, dtype=float)
    total = 0.0
    for j in range(len(f)):
        total += float(np.dot(y, f[j])) ** 2
    return total


def random_orthogonal(rng: np.random.Generator, d: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def mercedes_benz_frame() -> np.ndarray:
    """Three unit vectors in R^2 at mutual angle 120 degrees."""
    angles = (np.pi / 2, np.pi / 2 + 2 * np.pi / 3, np.pi / 2 + 4 * np.pi / 3)
    return np.array([[np.cos(a), np.sin(a)] for a in angles])
