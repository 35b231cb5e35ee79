"""Lloyd's k-means with farthest-point seeding, plus silhouette-based model selection.

Each restart seeds its first center uniformly at random and then repeatedly
adds the point farthest from all chosen centers; Lloyd iterations then
alternate assignment and mean updates until the assignment is a fixed point.
The within-cluster sum of squares strictly decreases across iterations, so
termination is guaranteed. ``choose_k`` grid-searches the cluster count by
maximizing the mean silhouette score.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist


class ClusteringError(ValueError):
    """Raised when the requested clustering is infeasible."""


@dataclass
class KMeansResult:
    centroids: np.ndarray
    labels: np.ndarray
    inertia: float
    n_iter: int
    inertia_history: list[float]
    k: int

    def assign(self, points: np.ndarray) -> np.ndarray:
        """Nearest-centroid labels for new points."""
        points = np.atleast_2d(points)
        return cdist(points, self.centroids).argmin(axis=1)


def _farthest_point_seeds(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    first = int(rng.integers(points.shape[0]))
    chosen = [first]
    min_dist = cdist(points, points[first:first + 1]).ravel()
    for _ in range(k - 1):
        nxt = int(min_dist.argmax())
        chosen.append(nxt)
        min_dist = np.minimum(min_dist, cdist(points, points[nxt:nxt + 1]).ravel())
    return points[chosen].copy()


def _lloyd(points: np.ndarray, centroids: np.ndarray,
           max_iter: int) -> tuple[np.ndarray, np.ndarray, float, int, list[float]]:
    k = centroids.shape[0]
    labels = np.full(points.shape[0], -1)
    history: list[float] = []
    for it in range(1, max_iter + 1):
        dists = cdist(points, centroids, metric="sqeuclidean")
        new_labels = dists.argmin(axis=1)
        for empty in np.setdiff1d(np.arange(k), np.unique(new_labels)):
            # Re-seed an empty cluster with the worst-assigned point; if even
            # that point sits exactly on its center (duplicate-only data with
            # fewer distinct points than k) the cluster stays empty and gets
            # pruned below.
            worst = int(dists[np.arange(points.shape[0]), new_labels].argmax())
            if dists[worst, new_labels[worst]] == 0.0:
                continue
            centroids[empty] = points[worst]
            dists[:, empty] = cdist(points, points[worst:worst + 1],
                                    metric="sqeuclidean").ravel()
            new_labels = dists.argmin(axis=1)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in np.unique(labels):
            centroids[c] = points[labels == c].mean(axis=0)
        history.append(float(
            ((points - centroids[labels]) ** 2).sum()))
    present = np.unique(labels)
    if len(present) < k:
        centroids = centroids[present]
        labels = np.searchsorted(present, labels)
    inertia = float(((points - centroids[labels]) ** 2).sum())
    return centroids, labels, inertia, it, history


def kmeans(points: np.ndarray, k: int, rng_seed: int | list[int] = 0,
           n_restarts: int = 10, max_iter: int = 300) -> KMeansResult:
    """Best-of-``n_restarts`` Lloyd clustering; deterministic per seed."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise ClusteringError("points must be a 2-d matrix")
    if k < 1 or k > points.shape[0]:
        raise ClusteringError(f"k={k} infeasible for {points.shape[0]} points")
    rng = np.random.default_rng(rng_seed)
    best: KMeansResult | None = None
    for _ in range(n_restarts):
        seeds = _farthest_point_seeds(points, k, rng)
        centroids, labels, inertia, n_iter, history = _lloyd(points, seeds, max_iter)
        if best is None or inertia < best.inertia:
            best = KMeansResult(centroids=centroids, labels=labels, inertia=inertia,
                                n_iter=n_iter, inertia_history=history,
                                k=centroids.shape[0])
    assert best is not None
    return best


def silhouette_score(points: np.ndarray, labels: np.ndarray) -> float:
    """Mean silhouette over all points; singleton-cluster points score 0."""
    points = np.asarray(points, dtype=float)
    labels = np.asarray(labels)
    uniq = np.unique(labels)
    if len(uniq) < 2 or len(uniq) >= points.shape[0]:
        raise ClusteringError("silhouette needs 2 <= #clusters <= n - 1")
    dists = cdist(points, points)
    n = points.shape[0]
    sizes = {c: int((labels == c).sum()) for c in uniq}
    scores = np.zeros(n)
    mean_to = np.stack([dists[:, labels == c].mean(axis=1) for c in uniq], axis=1)
    label_pos = {c: i for i, c in enumerate(uniq)}
    for i in range(n):
        c = labels[i]
        size = sizes[c]
        if size == 1:
            scores[i] = 0.0
            continue
        a = mean_to[i, label_pos[c]] * size / (size - 1)  # exclude self
        b = min(mean_to[i, label_pos[o]] for o in uniq if o != c)
        scores[i] = 0.0 if max(a, b) == 0 else (b - a) / max(a, b)
    return float(scores.mean())


def choose_k(points: np.ndarray, k_grid: list[int] | tuple[int, ...] | set[int],
             rng_seed: int = 0, n_restarts: int = 10) -> KMeansResult:
    """Grid-search the cluster count by silhouette; ties go to the smaller k."""
    points = np.asarray(points, dtype=float)
    grid = sorted(set(int(k) for k in k_grid))
    if not grid:
        raise ClusteringError("empty k grid")
    if grid[-1] > points.shape[0]:
        raise ClusteringError(
            f"k grid max {grid[-1]} exceeds row count {points.shape[0]}")
    best_result: KMeansResult | None = None
    best_score = -np.inf
    for k in grid:
        result = kmeans(points, k, rng_seed=[rng_seed, k], n_restarts=n_restarts)
        usable = 2 <= result.k <= points.shape[0] - 1
        score = silhouette_score(points, result.labels) if usable else -1.0
        if score > best_score:
            best_score = score
            best_result = result
    assert best_result is not None
    return best_result
