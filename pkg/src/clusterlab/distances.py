"""Distance kernels and the condensed pairwise distance matrix.

Every entry is computed by one shared row kernel with a fixed left-to-right
accumulation over coordinates, so results are bit-reproducible and identical
to a naive per-pair computation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._checks import as_feature_matrix
from .exceptions import DimensionMismatchError, EmptyCandidateSetError


class Metric(enum.Enum):
    """Supported dissimilarities.

    Euclidean and Manhattan are true metrics; squared Euclidean violates the
    triangle inequality and is provided for objective computations only.
    """

    EUCLIDEAN = "euclidean"
    SQEUCLIDEAN = "sqeuclidean"
    MANHATTAN = "manhattan"

    @classmethod
    def coerce(cls, value) -> "Metric":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            options = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown metric {value!r}; choose from {options}") from None


def _rows_to_point(X: np.ndarray, y: np.ndarray, metric: Metric) -> np.ndarray:
    """Distances from every row of X to the single point y."""
    diff = X - y
    if metric is Metric.MANHATTAN:
        return np.abs(diff).sum(axis=1)
    sq = (diff * diff).sum(axis=1)
    if metric is Metric.SQEUCLIDEAN:
        return sq
    return np.sqrt(sq)


def distance(a, b, metric=Metric.EUCLIDEAN) -> float:
    """Distance between two vectors under the chosen metric."""
    metric = Metric.coerce(metric)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatchError(a.shape[-1], b.shape[-1])
    return float(_rows_to_point(a.reshape(1, -1), b.reshape(-1), metric)[0])


def condensed_index(i: int, j: int, n: int) -> int:
    """Position of pair (i, j), i < j, in the condensed value sequence."""
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"invalid pair ({i}, {j}) for n={n}")
    if i > j:
        i, j = j, i
    return i * n - (i * (i + 1)) // 2 + (j - i - 1)


@dataclass(frozen=True)
class DistanceMatrix:
    """Condensed upper-triangular pairwise distances for n points.

    ``values[condensed_index(i, j, n)]`` holds d(i, j) for i < j; the
    diagonal is implicitly zero and symmetry comes from single storage.
    """

    n: int
    metric: Metric
    values: np.ndarray  # shape (n * (n - 1) / 2,)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", vals)
        expected = self.n * (self.n - 1) // 2
        if vals.shape != (expected,):
            raise ValueError(
                f"expected {expected} condensed entries for n={self.n}, "
                f"got shape {vals.shape}"
            )
        if vals.size and vals.min() < 0:
            raise ValueError("distances must be non-negative")
        self.values.setflags(write=False)

    def get(self, i: int, j: int) -> float:
        if i == j:
            if not 0 <= i < self.n:
                raise IndexError(f"index {i} out of range for n={self.n}")
            return 0.0
        return float(self.values[condensed_index(i, j, self.n)])

    def square(self) -> np.ndarray:
        """Expand to a dense symmetric (n, n) array with a zero diagonal."""
        full = np.zeros((self.n, self.n), dtype=np.float64)
        start = 0
        for i in range(self.n - 1):
            stop = start + self.n - 1 - i
            full[i, i + 1 :] = self.values[start:stop]
            full[i + 1 :, i] = self.values[start:stop]
            start = stop
        return full

    def scaled(self, factor: float) -> "DistanceMatrix":
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return DistanceMatrix(self.n, self.metric, self.values * factor)


def pairwise_distances(X, metric=Metric.EUCLIDEAN) -> DistanceMatrix:
    """All pairwise distances, condensed.

    Accepts an (n, d) array or a Dataset. Entry (i, j) equals
    ``distance(X[i], X[j], metric)`` exactly.
    """
    metric = Metric.coerce(metric)
    X = as_feature_matrix(X)
    n = X.shape[0]
    values = np.empty(n * (n - 1) // 2, dtype=np.float64)
    start = 0
    for i in range(n - 1):
        stop = start + n - 1 - i
        values[start:stop] = _rows_to_point(X[i + 1 :], X[i], metric)
        start = stop
    return DistanceMatrix(n=n, metric=metric, values=values)


def nearest_neighbor(query, X, exclude: int | None = None, metric=Metric.EUCLIDEAN):
    """Index and distance of the row closest to ``query``.

    Ties break toward the lowest index; ``exclude`` removes one row from
    consideration (used for leave-one-out lookups).
    """
    metric = Metric.coerce(metric)
    X = as_feature_matrix(X)
    query = np.asarray(query, dtype=np.float64).reshape(-1)
    if query.shape[0] != X.shape[1]:
        raise DimensionMismatchError(query.shape[0], X.shape[1])
    if X.shape[0] - (1 if exclude is not None else 0) < 1:
        raise EmptyCandidateSetError("no candidate rows to search")
    dists = _rows_to_point(X, query, metric)
    if exclude is not None:
        if not 0 <= exclude < X.shape[0]:
            raise IndexError(f"exclude index {exclude} out of range")
        dists = dists.copy()
        dists[exclude] = np.inf
    idx = int(np.argmin(dists))
    return idx, float(dists[idx])
