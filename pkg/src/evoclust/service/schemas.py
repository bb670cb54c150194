"""Pydantic request/response models for the clustering service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

MetricMode = Literal["unsquared", "squared"]


class CsvOptions(BaseModel):
    label_column: int | None = None
    header: bool = False
    missing_token: str = "?"


class DatasetSource(BaseModel):
    """Either inline CSV text or a server-local file path."""

    csv_text: str | None = None
    path: str | None = None
    options: CsvOptions = Field(default_factory=CsvOptions)

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.csv_text is None) == (self.path is None):
            raise ValueError("provide exactly one of csv_text or path")
        return self


class GaSettings(BaseModel):
    population: int = 15
    crossover_prob: float = 0.8
    mutation_prob: float = 0.001
    generations: int = 100
    elitism: int = 1


class KmeansSettings(BaseModel):
    epsilon: float = 1e-6
    max_iterations: int = 100


class RunRequest(BaseModel):
    source: DatasetSource
    algorithms: list[str] = ["kmeans", "ga", "improved_kmeans", "igk"]
    k: int
    k_prime: int | None = None
    subsamples: int = 4
    trials: int = 5
    seed: int = 0
    metric: MetricMode = "unsquared"
    impute: bool = False
    pca_threshold: float | None = None
    select_columns: list[int] | None = None
    ga: GaSettings = Field(default_factory=GaSettings)
    kmeans: KmeansSettings = Field(default_factory=KmeansSettings)

    @model_validator(mode="after")
    def _check_kprime(self):
        if self.k_prime is not None and self.k_prime <= self.k:
            raise ValueError("k_prime must exceed k")
        return self


class RunResponse(BaseModel):
    algorithms: list[str]
    rows: list[list[float]]
    averages: list[float]
    metadata: dict
    timings: list[list[float]]
    csv_text: str


class JcRequest(BaseModel):
    source: DatasetSource
    centers: list[list[float]]
    metric: MetricMode = "unsquared"


class JcResponse(BaseModel):
    jc: float
    metric: MetricMode
    counts: list[int]


class PcaRequest(BaseModel):
    source: DatasetSource
    variance_threshold: float = 0.98
    standardize: bool = False
    transform: bool = False


class PcaResponse(BaseModel):
    n_components: int
    explained_variance_ratio: list[float]
    cumulative_variance: float
    transformed_csv: str | None = None


class ImputeRequest(BaseModel):
    source: DatasetSource


class ImputeResponse(BaseModel):
    csv_text: str
    n_filled: int
