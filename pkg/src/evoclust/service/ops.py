"""Request handlers shared by the HTTP endpoints and the in-process CLI."""

from __future__ import annotations

import io

import numpy as np

from ..bench import ExperimentConfig, TrialTable, render_csv, run_experiment
from ..data import Dataset, impute_local_mean, load_csv, load_csv_text, pca_fit, pca_transform
from ..genetic import GaParams
from ..kmeans import KmeansParams
from ..metric import assign, compute_jc
from .schemas import (
    DatasetSource,
    ImputeRequest,
    ImputeResponse,
    JcRequest,
    JcResponse,
    PcaRequest,
    PcaResponse,
    RunRequest,
    RunResponse,
)


def load_source(source: DatasetSource) -> Dataset:
    opts = source.options
    if source.csv_text is not None:
        return load_csv_text(
            source.csv_text,
            label_column=opts.label_column,
            missing_token=opts.missing_token,
            header=opts.header,
            name="inline",
        )
    return load_csv(
        source.path,
        label_column=opts.label_column,
        missing_token=opts.missing_token,
        header=opts.header,
    )


def dataset_to_csv(data: Dataset) -> str:
    buf = io.StringIO()
    for i in range(data.n):
        cells = [f"{v:.10g}" for v in data.points[i]]
        if data.labels is not None:
            cells.append(data.labels[i])
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def _to_experiment_config(req: RunRequest, data_path: str | None = None) -> ExperimentConfig:
    opts = req.source.options
    return ExperimentConfig(
        data_path=data_path or req.source.path or "",
        k=req.k,
        algorithms=tuple(req.algorithms),
        label_column=opts.label_column,
        header=opts.header,
        missing_token=opts.missing_token,
        impute=req.impute,
        pca_threshold=req.pca_threshold,
        select_columns=tuple(req.select_columns) if req.select_columns else None,
        k_prime=req.k_prime,
        j_subsamples=req.subsamples,
        trials=req.trials,
        base_seed=req.seed,
        metric_mode=req.metric,
        kmeans_params=KmeansParams(
            epsilon=req.kmeans.epsilon,
            max_iterations=req.kmeans.max_iterations,
            metric_mode=req.metric,
        ),
        ga_params=GaParams(
            population_size=req.ga.population,
            crossover_prob=req.ga.crossover_prob,
            mutation_prob=req.ga.mutation_prob,
            generations=req.ga.generations,
            elitism=req.ga.elitism,
        ),
    )


def do_run(req: RunRequest) -> RunResponse:
    if req.source.csv_text is not None:
        import tempfile

        with tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False) as fh:
            fh.write(req.source.csv_text)
            path = fh.name
        config = _to_experiment_config(req, data_path=path)
    else:
        config = _to_experiment_config(req)
    table: TrialTable = run_experiment(config)
    return RunResponse(
        algorithms=list(table.algorithms),
        rows=table.rows,
        averages=table.averages,
        metadata=table.metadata,
        timings=table.timings,
        csv_text=render_csv(table),
    )


def do_jc(req: JcRequest) -> JcResponse:
    data = load_source(req.source)
    if data.missing_mask.any():
        data = impute_local_mean(data)
    centers = np.asarray(req.centers, dtype=float)
    assignment = assign(data, centers)
    jc = compute_jc(data, centers, assignment, req.metric)
    return JcResponse(jc=jc, metric=req.metric, counts=[int(c) for c in assignment.counts])


def do_pca(req: PcaRequest) -> PcaResponse:
    data = load_source(req.source)
    if data.missing_mask.any():
        data = impute_local_mean(data)
    model = pca_fit(data, req.variance_threshold, standardize=req.standardize)
    transformed = dataset_to_csv(pca_transform(model, data)) if req.transform else None
    ratios = [float(v) for v in model.explained_variance_ratio]
    return PcaResponse(
        n_components=model.components.shape[1],
        explained_variance_ratio=ratios,
        cumulative_variance=float(sum(ratios)),
        transformed_csv=transformed,
    )


def do_impute(req: ImputeRequest) -> ImputeResponse:
    data = load_source(req.source)
    n_missing = int(data.missing_mask.sum())
    filled = impute_local_mean(data)
    return ImputeResponse(csv_text=dataset_to_csv(filled), n_filled=n_missing)
