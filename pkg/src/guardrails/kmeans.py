"""Seeded k-means over full-length series vectors.

Lloyd's algorithm with k-means++ initialization, squared Euclidean distance,
best-of-restarts by inertia. Fully deterministic for a fixed (seed, restarts):
all restarts draw from one generator in sequence.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StrategyError

DEFAULT_RESTARTS = 10
MAX_ITER = 300


@dataclass(frozen=True)
class KMeansResult:
    assignments: np.ndarray  # (n,) cluster index per row
    centroids: np.ndarray  # (k, d)
    inertia: float


def _sq_dists(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """(n, k) squared Euclidean distances via the expanded-product identity."""
    d2 = (
        (points * points).sum(axis=1)[:, None]
        + (centers * centers).sum(axis=1)[None, :]
        - 2.0 * points @ centers.T
    )
    return np.maximum(d2, 0.0)


def _plusplus_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.integers(n)]
    for i in range(1, k):
        d2 = _sq_dists(points, centers[:i]).min(axis=1)
        total = d2.sum()
        if total > 0:
            idx = rng.choice(n, p=d2 / total)
        else:
            idx = rng.integers(n)  # all points coincide with a chosen center
        centers[i] = points[idx]
    return centers


def _lloyd(points: np.ndarray, k: int, rng: np.random.Generator) -> KMeansResult:
    n = points.shape[0]
    centroids = _plusplus_init(points, k, rng)
    assignments = np.full(n, -1)
    for _ in range(MAX_ITER):
        d2 = _sq_dists(points, centroids)
        new_assignments = d2.argmin(axis=1)

        # Re-seed empty clusters with the point farthest from its own centroid,
        # stealing only from clusters that keep at least one member.
        counts = np.bincount(new_assignments, minlength=k)
        for empty in np.flatnonzero(counts == 0):
            own_dist = d2[np.arange(n), new_assignments]
            candidates = np.flatnonzero(counts[new_assignments] >= 2)
            far = candidates[own_dist[candidates].argmax()]
            counts[new_assignments[far]] -= 1
            new_assignments[far] = empty
            counts[empty] = 1

        if np.array_equal(new_assignments, assignments):
            break
        assignments = new_assignments
        for c in range(k):
            members = points[assignments == c]
            if len(members):
                centroids[c] = members.mean(axis=0)

    inertia = float(_sq_dists(points, centroids)[np.arange(n), assignments].sum())
    return KMeansResult(assignments=assignments, centroids=centroids, inertia=inertia)


def kmeans_timeseries(
    matrix: np.ndarray,
    k: int,
    seed: int,
    restarts: int = DEFAULT_RESTARTS,
) -> KMeansResult:
    """Cluster series rows into k groups; returns the best of `restarts` runs."""
    points = np.asarray(matrix, dtype=float)
    if points.ndim != 2:
        raise StrategyError("k-means input must be a 2-d matrix")
    if not np.all(np.isfinite(points)):
        raise StrategyError("k-means input must be finite everywhere")
    if k < 1 or k > points.shape[0]:
        raise StrategyError(f"k={k} out of range for {points.shape[0]} rows")

    rng = np.random.default_rng(seed)
    best: KMeansResult | None = None
    for _ in range(max(1, restarts)):
        result = _lloyd(points, k, rng)
        if best is None or result.inertia < best.inertia:
            best = result
    assert best is not None
    return best
