"""Uniform-grid spatial index shared by the engine and the coverage sampler.

Cells are hashed on integer coordinates floor((x - origin) / cell). The cell
size carries a tiny relative margin over the query radius so that any pair
within the radius is guaranteed to sit in adjacent cells even at floating
point boundaries; the +-1 cell scan is then provably sufficient.
"""

from __future__ import annotations

from itertools import product

import numpy as np

# Margin keeping r / cell_size strictly below 1 despite rounding.
_CELL_MARGIN = 1e-9


class UniformGrid:
    """Bucket n points in R^d into cubic cells of size ~r."""

    def __init__(self, points: np.ndarray, r: float):
        if r <= 0:
            raise ValueError(f"grid radius must be > 0, got {r}")
        pts = np.asarray(points, dtype=float)
        self.points = pts
        self.r = float(r)
        self.cell = float(r) * (1.0 + _CELL_MARGIN)
        self.origin = pts.min(axis=0) if len(pts) else np.zeros(pts.shape[1])
        self.dim = pts.shape[1]
        keys = self.keys_of(pts)
        buckets: dict[tuple, list[int]] = {}
        for idx, key in enumerate(map(tuple, keys)):
            buckets.setdefault(key, []).append(idx)
        self.buckets = {k: np.asarray(v, dtype=np.intp) for k, v in buckets.items()}
        self._offsets = list(product((-1, 0, 1), repeat=self.dim))

    def keys_of(self, points: np.ndarray) -> np.ndarray:
        """Integer cell coordinates of arbitrary points on this grid."""
        q = np.floor((np.asarray(points, dtype=float) - self.origin) / self.cell)
        if q.size and np.abs(q).max() > 2**62:
            raise ValueError("point spread too large relative to grid cell size")
        return q.astype(np.int64)

    def indices_near(self, key) -> np.ndarray:
        """Indices of stored points in the 3^d neighborhood of a cell key."""
        key = tuple(int(k) for k in key)
        found = [
            self.buckets[nb]
            for off in self._offsets
            if (nb := tuple(k + o for k, o in zip(key, off))) in self.buckets
        ]
        if not found:
            return np.empty(0, dtype=np.intp)
        return np.concatenate(found)

    def pairs_within(self, r: float | None = None) -> list[tuple[int, int]]:
        """All unordered index pairs (i < j) with ||x_i - x_j|| <= r.

        Sorted lexicographically; exact distance test, the grid only prunes.
        """
        r = self.r if r is None else float(r)
        if r > self.cell:
            raise ValueError(f"query radius {r} exceeds grid cell size {self.cell}")
        r2 = r * r
        pts = self.points
        pairs: list[tuple[int, int]] = []
        # Scan only the "upper half" of the neighborhood so each cell pair is
        # visited once; same-cell pairs are handled with i < j inside.
        half_offsets = [off for off in self._offsets if off > (0,) * self.dim]
        for key in sorted(self.buckets):
            own = self.buckets[key]
            own_pts = pts[own]
            if len(own) > 1:
                diff = own_pts[:, None, :] - own_pts[None, :, :]
                d2 = np.einsum("ijk,ijk->ij", diff, diff)
                ii, jj = np.nonzero(np.triu(d2 <= r2, k=1))
                pairs.extend(zip(own[ii], own[jj]))
            for off in half_offsets:
                nb = tuple(k + o for k, o in zip(key, off))
                other = self.buckets.get(nb)
                if other is None:
                    continue
                diff = own_pts[:, None, :] - pts[other][None, :, :]
                d2 = np.einsum("ijk,ijk->ij", diff, diff)
                ii, jj = np.nonzero(d2 <= r2)
                pairs.extend(zip(own[ii], other[jj]))
        normalized = [(int(i), int(j)) if i < j else (int(j), int(i)) for i, j in pairs]
        normalized.sort()
        return normalized
