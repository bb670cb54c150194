"""Dataset loading, imputation, PCA reduction and subsampling.

Owns the data model consumed by every clustering module: a point matrix
with an optional label column and a missing-value mask.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace

import numpy as np


@dataclass
class Dataset:
    """n x d point matrix with optional class labels and a missing-value mask."""

    points: np.ndarray
    labels: list[str] | None = None
    missing_mask: np.ndarray = field(default=None)  # type: ignore[assignment]
    name: str = ""

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 2 or self.points.shape[0] < 1 or self.points.shape[1] < 1:
            raise ValueError("points must be a non-empty 2-D matrix")
        if self.missing_mask is None:
            self.missing_mask = np.zeros(self.points.shape, dtype=bool)
        else:
            self.missing_mask = np.asarray(self.missing_mask, dtype=bool)
        if self.missing_mask.shape != self.points.shape:
            raise ValueError("missing_mask shape must match points")
        if self.labels is not None and len(self.labels) != self.points.shape[0]:
            raise ValueError("labels length must equal the number of rows")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def subset(self, rows: np.ndarray, name: str = "") -> "Dataset":
        labels = [self.labels[i] for i in rows] if self.labels is not None else None
        return Dataset(
            points=self.points[rows].copy(),
            labels=labels,
            missing_mask=self.missing_mask[rows].copy(),
            name=name or self.name,
        )


@dataclass
class PcaModel:
    """Orthonormal projection basis fitted on centered (optionally scaled) data."""

    components: np.ndarray  # d x r
    explained_variance_ratio: np.ndarray  # r
    mean: np.ndarray  # d
    scale: np.ndarray | None = None  # d, set when fitted with standardize=True


def parse_rows(
    rows: list[list[str]],
    label_column: int | None = None,
    missing_token: str = "?",
    name: str = "",
) -> Dataset:
    """Build a Dataset from already-split CSV cells."""
    if not rows:
        raise ValueError("empty input: no data rows")
    width = len(rows[0])
    points = []
    mask = []
    labels: list[str] | None = [] if label_column is not None else None
    for r, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"ragged row {r}: expected {width} cells, got {len(row)}")
        prow = []
        mrow = []
        for c, cell in enumerate(row):
            cell = cell.strip()
            if label_column is not None and c == label_column:
                labels.append(cell)  # type: ignore[union-attr]
                continue
            if cell == missing_token:
                prow.append(np.nan)
                mrow.append(True)
            else:
                try:
                    prow.append(float(cell))
                except ValueError:
                    raise ValueError(
                        f"row {r}, column {c}: cannot parse {cell!r} as a number"
                    ) from None
                mrow.append(False)
        points.append(prow)
        mask.append(mrow)
    return Dataset(
        points=np.array(points, dtype=float),
        labels=labels,
        missing_mask=np.array(mask, dtype=bool),
        name=name,
    )


def load_csv_text(
    text: str,
    label_column: int | None = None,
    missing_token: str = "?",
    header: bool = False,
    name: str = "",
) -> Dataset:
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if header:
        rows = rows[1:]
    return parse_rows(rows, label_column=label_column, missing_token=missing_token, name=name)


def load_csv(
    path,
    label_column: int | None = None,
    missing_token: str = "?",
    header: bool = False,
    name: str = "",
) -> Dataset:
    """Load a comma-separated file; cells equal to missing_token become masked."""
    with open(path, newline="") as fh:
        text = fh.read()
    return load_csv_text(
        text,
        label_column=label_column,
        missing_token=missing_token,
        header=header,
        name=name or str(path),
    )


def impute_local_mean(data: Dataset) -> Dataset:
    """Fill missing cells with the same-class feature mean (global mean fallback).

    "Local" means: rows sharing the missing row's label. Datasets without
    labels, or classes with no observed value for the feature, fall back to
    the global feature mean.
    """
    if not data.missing_mask.any():
        return replace(data, points=data.points.copy(), missing_mask=np.zeros_like(data.missing_mask))

    points = data.points.copy()
    mask = data.missing_mask
    for c in range(data.d):
        col_missing = mask[:, c]
        if not col_missing.any():
            continue
        observed = ~col_missing
        if not observed.any():
            raise ValueError(f"feature {c} is missing in every row; no mean exists")
        global_mean = points[observed, c].mean()
        if data.labels is None:
            points[col_missing, c] = global_mean
            continue
        labels = np.asarray(data.labels)
        for i in np.nonzero(col_missing)[0]:
            same = (labels == labels[i]) & observed
            points[i, c] = points[same, c].mean() if same.any() else global_mean
    return replace(data, points=points, missing_mask=np.zeros_like(mask))


def pca_fit(data: Dataset, variance_threshold: float, standardize: bool = False) -> PcaModel:
    """Fit PCA on the covariance of centered data; keep the fewest components
    whose cumulative explained variance reaches the threshold."""
    if not 0.0 < variance_threshold <= 1.0:
        raise ValueError("variance_threshold must be in (0, 1]")
    if data.n < 2:
        raise ValueError("PCA needs at least 2 rows")
    if data.missing_mask.any():
        raise ValueError("impute missing values before PCA")

    X = data.points
    mean = X.mean(axis=0)
    Xc = X - mean
    scale = None
    if standardize:
        scale = Xc.std(axis=0, ddof=1)
        if np.any(scale == 0):
            raise ValueError("zero-variance feature: cannot standardize")
        Xc = Xc / scale

    cov = np.cov(Xc, rowvar=False)
    cov = np.atleast_2d(cov)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, None)
    eigvecs = eigvecs[:, order]
    total = eigvals.sum()
    if total <= 0:
        raise ValueError("dataset has zero variance")
    ratio = eigvals / total
    cumulative = np.cumsum(ratio)
    r = int(np.searchsorted(cumulative, variance_threshold - 1e-12) + 1)
    r = min(r, data.d)
    return PcaModel(
        components=eigvecs[:, :r].copy(),
        explained_variance_ratio=ratio[:r].copy(),
        mean=mean,
        scale=scale,
    )


def pca_transform(model: PcaModel, data: Dataset) -> Dataset:
    """Project centered (and scaled, if fitted so) data onto the retained components."""
    if data.d != model.mean.shape[0]:
        raise ValueError(
            f"dimension mismatch: model expects {model.mean.shape[0]} features, got {data.d}"
        )
    Xc = data.points - model.mean
    if model.scale is not None:
        Xc = Xc / model.scale
    projected = Xc @ model.components
    return Dataset(
        points=projected,
        labels=list(data.labels) if data.labels is not None else None,
        name=f"{data.name}+pca" if data.name else "pca",
    )


def draw_subsamples(data: Dataset, j: int, rng: np.random.Generator) -> list[Dataset]:
    """Partition a shuffled copy of the dataset into j disjoint near-equal blocks.

    Block sizes are floor(n/j) or ceil(n/j) and sum exactly to n, so the
    subsamples jointly cover the dataset.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    if j > data.n:
        raise ValueError(f"cannot draw {j} subsamples from {data.n} rows")
    perm = rng.permutation(data.n)
    blocks = np.array_split(perm, j)
    return [data.subset(block, name=f"{data.name}[{i}]") for i, block in enumerate(blocks)]
