"""Evolutionary k-means clustering with multi-sampling center refinement."""

from .bench import ExperimentConfig, TrialTable, emit_csv, render_csv, run_experiment
from .data import (
    Dataset,
    PcaModel,
    draw_subsamples,
    impute_local_mean,
    load_csv,
    pca_fit,
    pca_transform,
)
from .genetic import (
    Chromosome,
    GaParams,
    crossover_single_point,
    evaluate_fitness,
    ga_cluster,
    init_population,
    mutate,
    roulette_select,
)
from .kmeans import KmeansParams, init_random, kmeans_run
from .metric import (
    SQUARED,
    UNSQUARED,
    Assignment,
    ClusterModel,
    assign,
    compute_jc,
    distance,
    recompute_centers,
)
from .refine import RefineParams, igk, improved_kmeans, merge_to_k, refine_initial_centers

__all__ = [
    "Assignment",
    "Chromosome",
    "ClusterModel",
    "Dataset",
    "ExperimentConfig",
    "GaParams",
    "KmeansParams",
    "PcaModel",
    "RefineParams",
    "SQUARED",
    "TrialTable",
    "UNSQUARED",
    "assign",
    "compute_jc",
    "crossover_single_point",
    "distance",
    "draw_subsamples",
    "emit_csv",
    "evaluate_fitness",
    "ga_cluster",
    "igk",
    "improved_kmeans",
    "impute_local_mean",
    "init_population",
    "init_random",
    "kmeans_run",
    "load_csv",
    "merge_to_k",
    "mutate",
    "pca_fit",
    "pca_transform",
    "recompute_centers",
    "refine_initial_centers",
    "render_csv",
    "roulette_select",
    "run_experiment",
]
