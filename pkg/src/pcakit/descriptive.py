"""Univariate screening: location, spread, shape, and anomaly counts per column."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ContractError, DegenerateColumnError, InsufficientDataError

NORMAL_BOUND = 1.96


def _as_column(column: Sequence[float]) -> np.ndarray:
    x = np.asarray(column, dtype=np.float64)
    if x.ndim != 1:
        raise ContractError("expected a one-dimensional column")
    return x


def mean_sd(column: Sequence[float]) -> tuple[float, float]:
    """Arithmetic mean and sample standard deviation (``n - 1`` denominator)."""
    x = _as_column(column)
    if x.size < 2:
        raise InsufficientDataError(f"mean/sd need at least 2 values, got {x.size}")
    mean = float(np.mean(x))
    return mean, float(np.sqrt(np.sum((x - mean) ** 2) / (x.size - 1)))


def _central_moments(x: np.ndarray) -> tuple[float, float, float]:
    d = x - np.mean(x)
    m2 = float(np.mean(d**2))
    if m2 == 0.0:
        raise DegenerateColumnError("column has zero variance")
    return m2, float(np.mean(d**3)), float(np.mean(d**4))


def _skewness_se(n: int) -> float:
    return math.sqrt(6.0 * n * (n - 1) / ((n - 2) * (n + 1) * (n + 3)))


def standardized_skewness(column: Sequence[float]) -> float:
    """Sample-adjusted skewness ``G1`` divided by its standard error.

    ``G1 = g1 * sqrt(n (n-1)) / (n-2)`` where ``g1 = m3 / m2**1.5`` uses
    central moments with ``1/n`` denominators.
    """
    x = _as_column(column)
    n = x.size
    if n < 3:
        raise InsufficientDataError(f"skewness needs at least 3 values, got {n}")
    m2, m3, _ = _central_moments(x)
    g1 = m3 / m2**1.5
    big_g1 = g1 * math.sqrt(n * (n - 1)) / (n - 2)
    return big_g1 / _skewness_se(n)


def standardized_kurtosis(column: Sequence[float]) -> float:
    """Sample-adjusted excess kurtosis ``G2`` divided by its standard error."""
    x = _as_column(column)
    n = x.size
    if n < 4:
        raise InsufficientDataError(f"kurtosis needs at least 4 values, got {n}")
    m2, _, m4 = _central_moments(x)
    g2 = m4 / m2**2 - 3.0
    big_g2 = ((n + 1) * g2 + 6.0) * (n - 1) / ((n - 2) * (n - 3))
    se = 2.0 * _skewness_se(n) * math.sqrt((n * n - 1.0) / ((n - 3) * (n + 5)))
    return big_g2 / se


def quantile_type7(column: Sequence[float], p: float) -> float:
    """Linear-interpolation quantile (Hyndman-Fan type 7)."""
    if not 0.0 <= p <= 1.0:
        raise ContractError(f"quantile probability must lie in [0, 1], got {p}")
    x = np.sort(_as_column(column))
    if x.size == 0:
        raise InsufficientDataError("quantile of an empty column")
    h = (x.size - 1) * p
    lo = int(math.floor(h))
    if lo >= x.size - 1:
        return float(x[-1])
    return float(x[lo] + (h - lo) * (x[lo + 1] - x[lo]))


def five_number(column: Sequence[float]) -> tuple[float, float, float, float, float]:
    return tuple(quantile_type7(column, p) for p in (0.0, 0.25, 0.5, 0.75, 1.0))  # type: ignore[return-value]


def anomaly_counts(column: Sequence[float]) -> tuple[int, int, int]:
    """Count (outliers, extremal values, six-sigma events) in a column.

    Outliers lie strictly beyond the 1.5 IQR fences but within the 3 IQR
    fences; extremal values lie strictly beyond the 3 IQR fences.  A
    six-sigma event deviates from the mean by more than three sample
    standard deviations.
    """
    x = _as_column(column)
    if x.size < 4:
        raise InsufficientDataError(f"anomaly counts need at least 4 values, got {x.size}")
    q1, q3 = quantile_type7(x, 0.25), quantile_type7(x, 0.75)
    iqr = q3 - q1
    mean, sd = mean_sd(x)
    if iqr == 0.0 and sd == 0.0:
        raise DegenerateColumnError("column is constant")
    beyond_inner = (x < q1 - 1.5 * iqr) | (x > q3 + 1.5 * iqr)
    beyond_outer = (x < q1 - 3.0 * iqr) | (x > q3 + 3.0 * iqr)
    outliers = int(np.sum(beyond_inner & ~beyond_outer))
    extremal = int(np.sum(beyond_outer))
    six_sigma = int(np.sum(np.abs(x - mean) > 3.0 * sd))
    return outliers, extremal, six_sigma


@dataclass(frozen=True)
class ColumnSummary:
    name: str
    n: int
    mean: float
    sd: float
    std_skewness: float
    std_kurtosis: float
    approx_normal: bool
    outliers: int
    extremal_values: int
    six_sigma_events: int
    five_number: tuple[float, float, float, float, float]


def summarize_column(name: str, column: Sequence[float]) -> ColumnSummary:
    x = _as_column(column)
    try:
        mean, sd = mean_sd(x)
        skew = standardized_skewness(x)
        kurt = standardized_kurtosis(x)
        outliers, extremal, six_sigma = anomaly_counts(x)
    except (InsufficientDataError, DegenerateColumnError) as exc:
        raise type(exc)(f"column {name!r}: {exc}") from exc
    return ColumnSummary(
        name=name,
        n=int(x.size),
        mean=mean,
        sd=sd,
        std_skewness=skew,
        std_kurtosis=kurt,
        approx_normal=abs(skew) <= NORMAL_BOUND and abs(kurt) <= NORMAL_BOUND,
        outliers=outliers,
        extremal_values=extremal,
        six_sigma_events=six_sigma,
        five_number=five_number(x),
    )


def describe(matrix: np.ndarray, names: Sequence[str]) -> list[ColumnSummary]:
    """Summarize every column of an ``n x m`` matrix."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != len(names):
        raise ContractError("describe needs an n x m matrix and m column names")
    return [summarize_column(name, matrix[:, j]) for j, name in enumerate(names)]
