import numpy as np
import pytest
from sklearn.datasets import load_iris

from evoclust.data import Dataset


@pytest.fixture(scope="session")
def iris_csv(tmp_path_factory):
    """Iris as a CSV file with the class label in column 4."""
    iris = load_iris()
    path = tmp_path_factory.mktemp("data") / "iris.csv"
    lines = []
    for row, target in zip(iris.data, iris.target):
        lines.append(",".join(f"{v:.1f}" for v in row) + f",{iris.target_names[target]}")
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture(scope="session")
def iris_data():
    iris = load_iris()
    labels = [iris.target_names[t] for t in iris.target]
    return Dataset(points=iris.data, labels=labels, name="iris")


def make_blobs(rng, centers, points_per_blob, spread=0.1):
    """Tight Gaussian blobs with known means; returns (X, blob_means)."""
    centers = np.asarray(centers, dtype=float)
    chunks = [
        c + spread * rng.standard_normal((points_per_blob, centers.shape[1])) for c in centers
    ]
    return np.vstack(chunks), centers
