"""Distances, nearest-center assignment, center recomputation and the
squared-error objective.

The objective is exposed in two modes because the two common readings of
the criterion disagree: "unsquared" sums plain Euclidean distances,
"squared" sums squared distances. Reported benchmark values default to
unsquared; convergence checks always use squared (only that one is
guaranteed monotone under mean updates).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNSQUARED = "unsquared"
SQUARED = "squared"
METRIC_MODES = (UNSQUARED, SQUARED)


@dataclass
class Assignment:
    cluster_of: np.ndarray  # n ints in [0, k)
    counts: np.ndarray  # k cluster sizes

    def __post_init__(self):
        self.cluster_of = np.asarray(self.cluster_of, dtype=int)
        self.counts = np.asarray(self.counts, dtype=int)


@dataclass
class ClusterModel:
    centers: np.ndarray  # k x d
    assignment: Assignment
    jc: float
    metric_mode: str = UNSQUARED
    jc_history: list[float] | None = None  # squared-mode trace, when the solver records one

    @property
    def k(self) -> int:
        return self.centers.shape[0]


def _points_of(data) -> np.ndarray:
    return data.points if hasattr(data, "points") else np.asarray(data, dtype=float)


def distance(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def assign_points(X: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Index of the nearest center per point; ties go to the lowest index."""
    if X.shape[1] != centers.shape[1]:
        raise ValueError(
            f"dimension mismatch: points have {X.shape[1]} features, centers {centers.shape[1]}"
        )
    # squared distances via ||x||^2 - 2 x.c + ||c||^2; argmin is tie-stable (first minimum)
    d2 = (
        np.einsum("ij,ij->i", X, X)[:, None]
        - 2.0 * X @ centers.T
        + np.einsum("ij,ij->i", centers, centers)[None, :]
    )
    return np.argmin(d2, axis=1)


def assign(data, centers: np.ndarray) -> Assignment:
    X = _points_of(data)
    centers = np.asarray(centers, dtype=float)
    if centers.ndim != 2 or centers.shape[0] < 1:
        raise ValueError("centers must be a non-empty k x d matrix")
    cluster_of = assign_points(X, centers)
    counts = np.bincount(cluster_of, minlength=centers.shape[0])
    return Assignment(cluster_of=cluster_of, counts=counts)


def compute_jc(data, centers: np.ndarray, assignment: Assignment, mode: str = UNSQUARED) -> float:
    if mode not in METRIC_MODES:
        raise ValueError(f"unknown metric mode {mode!r}")
    X = _points_of(data)
    centers = np.asarray(centers, dtype=float)
    cluster_of = assignment.cluster_of
    if cluster_of.min() < 0 or cluster_of.max() >= centers.shape[0]:
        raise ValueError("assignment index out of range")
    diff = X - centers[cluster_of]
    sq = np.einsum("ij,ij->i", diff, diff)
    if mode == SQUARED:
        return float(sq.sum())
    return float(np.sqrt(sq).sum())


def recompute_centers(data, assignment: Assignment, k: int, rng=None) -> np.ndarray:
    """Cluster means; an empty cluster is re-seeded to the point currently
    farthest from its own cluster's new center."""
    X = _points_of(data)
    if X.shape[0] == 0:
        raise ValueError("cannot recompute centers of an empty dataset")
    if k < 1:
        raise ValueError("k must be >= 1")
    cluster_of = assignment.cluster_of
    counts = np.bincount(cluster_of, minlength=k)

    centers = np.zeros((k, X.shape[1]))
    np.add.at(centers, cluster_of, X)
    nonempty = counts > 0
    centers[nonempty] /= counts[nonempty, None]

    empty = np.nonzero(~nonempty)[0]
    if empty.size:
        diff = X - centers[cluster_of]
        dist = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        order = np.argsort(dist)[::-1]
        for slot, j in enumerate(empty):
            centers[j] = X[order[slot % len(order)]]
    return centers
