"""Classic Lloyd-style k-means: random initial centers, alternate
assignment and mean updates until the squared objective stops moving."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metric import (
    SQUARED,
    UNSQUARED,
    Assignment,
    ClusterModel,
    _points_of,
    assign,
    compute_jc,
    recompute_centers,
)


@dataclass
class KmeansParams:
    epsilon: float = 1e-6  # relative to the first iteration's squared objective
    max_iterations: int = 100
    metric_mode: str = UNSQUARED

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


def init_random(data, k: int, rng: np.random.Generator) -> np.ndarray:
    """k distinct data points chosen uniformly without replacement."""
    X = _points_of(data)
    n = X.shape[0]
    if k > n:
        raise ValueError(f"k={k} exceeds dataset size n={n}")
    idx = rng.choice(n, size=k, replace=False)
    return X[idx].copy()


def kmeans_run(data, k: int, init_centers: np.ndarray, params: KmeansParams) -> ClusterModel:
    """Iterate assign / recompute until |delta Jc| (squared mode) drops below
    epsilon * initial Jc, or the iteration cap is hit.

    The returned assignment and objective are recomputed against the final
    centers, so the output is internally consistent.
    """
    X = _points_of(data)
    centers = np.array(init_centers, dtype=float)
    if centers.shape != (k, X.shape[1]):
        raise ValueError(f"init_centers must be {k} x {X.shape[1]}")

    history: list[float] = []
    prev = None
    threshold = 0.0
    for _ in range(params.max_iterations):
        assignment = assign(X, centers)
        centers = recompute_centers(X, assignment, k)
        jc_sq = compute_jc(X, centers, assignment, SQUARED)
        history.append(jc_sq)
        if prev is None:
            threshold = params.epsilon * jc_sq
        elif jc_sq == prev or abs(jc_sq - prev) < threshold:
            break
        prev = jc_sq

    assignment = assign(X, centers)
    jc = compute_jc(X, centers, assignment, params.metric_mode)
    return ClusterModel(
        centers=centers,
        assignment=assignment,
        jc=jc,
        metric_mode=params.metric_mode,
        jc_history=history,
    )
