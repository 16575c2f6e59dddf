"""Column-wise z-scores with the center/scale needed to undo them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateColumnError, InsufficientDataError, ShapeError
from .linalg import Matrix, MatrixLike, as_matrix


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class StandardizedData:
    """Standardized data matrix ``z`` (``n x m``) and its per-column center and scale."""

    z: Matrix
    center: np.ndarray
    scale: np.ndarray
    column_names: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.z.shape[0]

    @property
    def m(self) -> int:
        return self.z.shape[1]


def standardize(x: MatrixLike, names: Sequence[str] | None = None) -> StandardizedData:
    """Standardize each column to mean 0 and sample standard deviation 1.

    Raises
    ------
    DegenerateColumnError
        If any column is constant.
    """
    x = as_matrix(x)
    n, m = x.shape
    names = tuple(names) if names is not None else tuple(f"x{j + 1}" for j in range(m))
    if len(names) != m:
        raise ShapeError(f"{len(names)} names given for {m} columns")
    if n < 2:
        raise InsufficientDataError(f"standardization needs at least 2 rows, got {n}")
    center = x.mean(axis=0)
    scale = np.sqrt(((x - center) ** 2).sum(axis=0) / (n - 1))
    for j, sd in enumerate(scale):
        if sd == 0.0:
            raise DegenerateColumnError(f"column {names[j]!r} is constant")
    z = (x - center) / scale
    return StandardizedData(z=_frozen(z), center=_frozen(center), scale=_frozen(scale), column_names=names)


def destandardize(z_like: MatrixLike, center: Sequence[float], scale: Sequence[float]) -> Matrix:
    """Map standardized coordinates back to original units: ``z * scale + center``."""
    z_like = as_matrix(z_like)
    center = np.asarray(center, dtype=np.float64)
    scale = np.asarray(scale, dtype=np.float64)
    if center.shape != (z_like.shape[1],) or scale.shape != (z_like.shape[1],):
        raise ShapeError(
            f"center/scale of length {center.size}/{scale.size} do not match {z_like.shape[1]} columns"
        )
    return z_like * scale + center
