"""Experiment harness: run the four algorithms over paired seeds and emit
per-trial objective tables as CSV."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, impute_local_mean, load_csv, pca_fit, pca_transform
from .genetic import GaParams, ga_cluster
from .kmeans import KmeansParams, init_random, kmeans_run
from .metric import UNSQUARED
from .refine import INNER_GENETIC, INNER_KMEANS, RefineParams, igk, improved_kmeans

ALGORITHMS = ("kmeans", "ga", "improved_kmeans", "igk")


@dataclass
class ExperimentConfig:
    data_path: str
    k: int
    algorithms: tuple[str, ...] = ALGORITHMS
    label_column: int | None = None
    header: bool = False
    missing_token: str = "?"
    impute: bool = False
    pca_threshold: float | None = None
    select_columns: tuple[int, ...] | None = None
    k_prime: int | None = None  # defaults to 2k
    j_subsamples: int = 4
    trials: int = 5
    base_seed: int = 0
    metric_mode: str = UNSQUARED
    kmeans_params: KmeansParams = field(default_factory=KmeansParams)
    ga_params: GaParams = field(default_factory=GaParams)
    out_path: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.algorithms:
            raise ValueError("at least one algorithm must be requested")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")
        if self.k_prime is None:
            self.k_prime = 2 * self.k
        self.kmeans_params.metric_mode = self.metric_mode


@dataclass
class TrialTable:
    algorithms: tuple[str, ...]
    rows: list[list[float]]  # trials x algorithms
    averages: list[float]
    metadata: dict
    timings: list[list[float]]  # wall-clock seconds per cell; kept out of the CSV


def prepare_dataset(config: ExperimentConfig) -> Dataset:
    data = load_csv(
        config.data_path,
        label_column=config.label_column,
        missing_token=config.missing_token,
        header=config.header,
    )
    if config.impute or data.missing_mask.any():
        data = impute_local_mean(data)
    if config.select_columns is not None:
        data = Dataset(
            points=data.points[:, list(config.select_columns)],
            labels=data.labels,
            name=data.name,
        )
    elif config.pca_threshold is not None:
        model = pca_fit(data, config.pca_threshold)
        data = pca_transform(model, data)
    return data


def _run_cell(algo: str, data: Dataset, config: ExperimentConfig, seed: int) -> float:
    rng = np.random.default_rng(seed)
    if algo == "kmeans":
        init = init_random(data, config.k, rng)
        return kmeans_run(data, config.k, init, config.kmeans_params).jc
    if algo == "ga":
        return ga_cluster(data, config.k, config.ga_params, rng, mode=config.metric_mode).jc
    refine = RefineParams(
        k=config.k,
        k_prime=config.k_prime,
        j_subsamples=config.j_subsamples,
        inner=INNER_KMEANS if algo == "improved_kmeans" else INNER_GENETIC,
        inner_kmeans=config.kmeans_params,
        inner_ga=config.ga_params,
        metric_mode=config.metric_mode,
    )
    if algo == "improved_kmeans":
        return improved_kmeans(data, refine, rng).jc
    return igk(data, refine, rng).jc


def run_experiment(config: ExperimentConfig) -> TrialTable:
    """Every algorithm in a trial row shares the same seed (base_seed + trial),
    so columns are paired comparisons."""
    data = prepare_dataset(config)
    seeds = [config.base_seed + t for t in range(config.trials)]

    rows: list[list[float]] = []
    timings: list[list[float]] = []
    for seed in seeds:
        row = []
        times = []
        for algo in config.algorithms:
            t0 = time.perf_counter()
            row.append(_run_cell(algo, data, config, seed))
            times.append(time.perf_counter() - t0)
        rows.append(row)
        timings.append(times)

    averages = [float(np.mean([r[i] for r in rows])) for i in range(len(config.algorithms))]
    metadata = {
        "dataset": data.name,
        "n": data.n,
        "d": data.d,
        "k": config.k,
        "kprime": config.k_prime,
        "subsamples": config.j_subsamples,
        "metric": config.metric_mode,
        "seeds": ",".join(str(s) for s in seeds),
    }
    return TrialTable(
        algorithms=tuple(config.algorithms),
        rows=rows,
        averages=averages,
        metadata=metadata,
        timings=timings,
    )


def render_csv(table: TrialTable) -> str:
    """CSV text: '#'-prefixed metadata lines, a header, one row per trial and
    a final average row. Floats use 6 significant digits.

    Timings are deliberately excluded so identical configs produce
    byte-identical output.
    """
    lines = [f"# {key}={value}" for key, value in table.metadata.items()]
    lines.append("trial," + ",".join(table.algorithms))
    for t, row in enumerate(table.rows, start=1):
        lines.append(f"{t}," + ",".join(f"{v:.6g}" for v in row))
    lines.append("average," + ",".join(f"{v:.6g}" for v in table.averages))
    return "\n".join(lines) + "\n"


def emit_csv(table: TrialTable, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(render_csv(table))
