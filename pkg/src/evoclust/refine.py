"""Multi-sampling initial-center refinement, clustering at an inflated
cluster count, and nearest-pair merging back down to the target k.

This composes the two improved pipelines: one with a k-means inner solver
and one with the genetic solver, where the full-data genetic pass is
seeded with the refined centers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, draw_subsamples
from .genetic import GaParams, ga_cluster
from .kmeans import KmeansParams, init_random, kmeans_run
from .metric import SQUARED, UNSQUARED, ClusterModel, assign, compute_jc

INNER_KMEANS = "kmeans"
INNER_GENETIC = "genetic"


@dataclass
class RefineParams:
    k: int
    k_prime: int
    j_subsamples: int = 4
    inner: str = INNER_KMEANS
    inner_kmeans: KmeansParams = field(default_factory=KmeansParams)
    inner_ga: GaParams = field(default_factory=GaParams)
    metric_mode: str = UNSQUARED
    medoid_snap: bool = False  # snap final centers to nearest data points

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.k_prime <= self.k:
            raise ValueError(f"k_prime ({self.k_prime}) must exceed k ({self.k})")
        if self.j_subsamples < 1:
            raise ValueError("j_subsamples must be >= 1")
        if self.inner not in (INNER_KMEANS, INNER_GENETIC):
            raise ValueError(f"unknown inner solver {self.inner!r}")


def refine_initial_centers(
    data: Dataset,
    params: RefineParams,
    rng: np.random.Generator,
    return_candidates: bool = False,
):
    """Cluster each of J disjoint subsamples at k_prime, score every candidate
    center-set on the full dataset (squared mode) and return the argmin.

    Each subsample run uses an independent random stream derived from rng so
    results do not depend on evaluation order.
    """
    subs = draw_subsamples(data, params.j_subsamples, rng)
    smallest = min(s.n for s in subs)
    if params.k_prime > smallest:
        raise ValueError(
            f"k_prime={params.k_prime} exceeds the smallest subsample size {smallest}"
        )
    child_seeds = rng.integers(0, 2**63 - 1, size=params.j_subsamples)

    candidates = []
    for sub, seed in zip(subs, child_seeds):
        sub_rng = np.random.default_rng(seed)
        if params.inner == INNER_KMEANS:
            init = init_random(sub, params.k_prime, sub_rng)
            model = kmeans_run(sub, params.k_prime, init, params.inner_kmeans)
        else:
            model = ga_cluster(sub, params.k_prime, params.inner_ga, sub_rng, mode=params.metric_mode)
        candidates.append(model.centers)

    scores = []
    for cand in candidates:
        assignment = assign(data, cand)
        scores.append(compute_jc(data, cand, assignment, SQUARED))
    best = candidates[int(np.argmin(scores))]
    if return_candidates:
        return best, candidates, scores
    return best


def _merge_centers(centers: np.ndarray, counts: np.ndarray, k: int):
    """Greedy nearest-pair merging down to k centers.

    Returns the merged centers, their member counts, and a trace of
    (index_a, index_b, merged_center) tuples for the merges performed.
    """
    centers = [c.copy() for c in centers]
    counts = [int(c) for c in counts]
    trace = []
    while len(centers) > k:
        best_pair = None
        best_d2 = np.inf
        for i in range(len(centers)):
            for j in range(i + 1, len(centers)):
                d2 = float(np.sum((centers[i] - centers[j]) ** 2))
                if d2 < best_d2:
                    best_d2 = d2
                    best_pair = (i, j)
        i, j = best_pair
        na, nb = counts[i], counts[j]
        merged = (na * centers[i] + nb * centers[j]) / (na + nb)
        trace.append((i, j, merged.copy()))
        centers[i] = merged
        counts[i] = na + nb
        del centers[j]
        del counts[j]
    return np.array(centers), np.array(counts), trace


def merge_to_k(
    model: ClusterModel, data: Dataset, k: int, polish: KmeansParams | None = None
) -> ClusterModel:
    """Merge the nearest pair of centers (size-weighted mean) until k remain,
    then polish with reassignment/recompute passes until convergence and
    rescore. Polishing never increases the squared objective relative to the
    post-merge configuration."""
    counts = model.assignment.counts
    nonempty = counts > 0
    if int(nonempty.sum()) < k:
        raise ValueError(f"model has {int(nonempty.sum())} non-empty clusters, need >= {k}")
    centers, _, _ = _merge_centers(model.centers[nonempty], counts[nonempty], k)

    if polish is None:
        polish = KmeansParams(metric_mode=model.metric_mode)
    else:
        polish = KmeansParams(
            epsilon=polish.epsilon,
            max_iterations=polish.max_iterations,
            metric_mode=model.metric_mode,
        )
    return kmeans_run(data, k, centers, polish)


def _snap_to_medoids(model: ClusterModel, data: Dataset) -> ClusterModel:
    X = data.points
    centers = model.centers.copy()
    for j in range(model.k):
        members = np.nonzero(model.assignment.cluster_of == j)[0]
        if members.size == 0:
            continue
        d = np.linalg.norm(X[members] - centers[j], axis=1)
        centers[j] = X[members[int(np.argmin(d))]]
    assignment = assign(data, centers)
    jc = compute_jc(data, centers, assignment, model.metric_mode)
    return ClusterModel(centers=centers, assignment=assignment, jc=jc, metric_mode=model.metric_mode)


def improved_kmeans(data: Dataset, params: RefineParams, rng: np.random.Generator) -> ClusterModel:
    """Refined initialization via subsample k-means, a full-data k-means run
    at k_prime, then merging down to k."""
    refined = refine_initial_centers(data, params, rng)
    model = kmeans_run(data, params.k_prime, refined, params.inner_kmeans)
    model.metric_mode = params.metric_mode
    merged = merge_to_k(model, data, params.k, polish=params.inner_kmeans)
    return _snap_to_medoids(merged, data) if params.medoid_snap else merged


def igk(data: Dataset, params: RefineParams, rng: np.random.Generator) -> ClusterModel:
    """As improved_kmeans but with the genetic solver on the subsamples and
    again on the full dataset, seeded with the refined centers."""
    ga_params = RefineParams(
        k=params.k,
        k_prime=params.k_prime,
        j_subsamples=params.j_subsamples,
        inner=INNER_GENETIC,
        inner_kmeans=params.inner_kmeans,
        inner_ga=params.inner_ga,
        metric_mode=params.metric_mode,
    )
    refined = refine_initial_centers(data, ga_params, rng)
    model = ga_cluster(
        data, params.k_prime, params.inner_ga, rng, mode=params.metric_mode, seed_centers=refined
    )
    merged = merge_to_k(model, data, params.k, polish=params.inner_kmeans)
    return _snap_to_medoids(merged, data) if params.medoid_snap else merged
