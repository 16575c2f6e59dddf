"""Correlation-matrix PCA: rotation, eigenvalues, loadings, scores and their identities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, SingularMatrixError
from .linalg import EigenDecomposition, Matrix, determinant, eigen_symmetric, identity, max_abs
from .standardize import StandardizedData

CONSISTENCY_TOL = 1e-9
SINGULAR_EIGENVALUE = 1e-12


def correlation_matrix(z: StandardizedData) -> Matrix:
    """Sample correlation matrix ``R = Z^T Z / (n - 1)``."""
    n = z.n
    if n < 2:
        raise ShapeError("correlation needs at least 2 rows")
    r = z.z.T @ z.z / (n - 1)
    r = 0.5 * (r + r.T)
    np.fill_diagonal(r, 1.0)
    return np.clip(r, -1.0, 1.0)


@dataclass(frozen=True)
class PcaModel:
    """A fitted principal component model.

    ``rotation`` has the eigenvectors of ``r`` as columns and determinant
    +1; ``loadings`` is ``rotation * sqrt(eigenvalues)`` column-wise.
    """

    r: Matrix
    eig: EigenDecomposition
    rotation: Matrix
    eigenvalues: np.ndarray
    loadings: Matrix
    proportion: np.ndarray
    cumulative: np.ndarray
    kaiser_flags: tuple[bool, ...]
    column_names: tuple[str, ...]

    @property
    def m(self) -> int:
        return self.eigenvalues.size

    @property
    def lambda_matrix(self) -> Matrix:
        return np.diag(self.eigenvalues)

    @property
    def lambda_inverse(self) -> Matrix:
        return np.diag(1.0 / self.eigenvalues)


@dataclass(frozen=True)
class ScoreSet:
    z_rot: Matrix
    f: Matrix


@dataclass(frozen=True)
class ConsistencyReport:
    """Max-abs residuals of the five identities satisfied by a fitted model."""

    r_minus_aat: float
    lambda_minus_ata: float
    identity_minus_ftf: float
    a_minus_ztf: float
    z_minus_fat: float

    def as_dict(self) -> dict[str, float]:
        return {
            "r_minus_aat": self.r_minus_aat,
            "lambda_minus_ata": self.lambda_minus_ata,
            "identity_minus_ftf": self.identity_minus_ftf,
            "a_minus_ztf": self.a_minus_ztf,
            "z_minus_fat": self.z_minus_fat,
        }

    @property
    def worst(self) -> float:
        return max(self.as_dict().values())

    def ok(self, tol: float = CONSISTENCY_TOL) -> bool:
        return self.worst <= tol


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.flags.writeable = False
    return a


def fit(z: StandardizedData) -> PcaModel:
    """Fit PCA on the correlation matrix of ``z``.

    If the eigenvector basis is left-handed, the column paired with the
    smallest eigenvalue is negated so that ``det(rotation) = +1``.
    """
    r = correlation_matrix(z)
    eig = eigen_symmetric(r)
    v = eig.vectors.copy()
    if determinant(v) < 0.0:
        v[:, -1] = -v[:, -1]
    lam = eig.values.copy()
    m = lam.size
    if lam[-1] <= SINGULAR_EIGENVALUE * m:
        raise SingularMatrixError(
            f"correlation matrix is singular (smallest eigenvalue {lam[-1]:.3e})"
        )
    loadings = v * np.sqrt(lam)
    proportion = lam / m
    cumulative = np.cumsum(proportion)
    return PcaModel(
        r=_frozen(r),
        eig=eig,
        rotation=_frozen(v),
        eigenvalues=_frozen(lam),
        loadings=_frozen(loadings),
        proportion=_frozen(proportion),
        cumulative=_frozen(cumulative),
        kaiser_flags=tuple(bool(x > 1.0) for x in lam),
        column_names=z.column_names,
    )


def scores(model: PcaModel, z: StandardizedData) -> ScoreSet:
    """Rotated scores ``Z V`` and f-scores ``Z V Lambda^(-1/2)``."""
    if z.m != model.m:
        raise ShapeError(f"data has {z.m} columns, model has {model.m}")
    z_rot = z.z @ model.rotation
    f = z_rot / np.sqrt(model.eigenvalues)
    return ScoreSet(z_rot=_frozen(z_rot), f=_frozen(f))


def consistency_check(model: PcaModel, z: StandardizedData, score_set: ScoreSet) -> ConsistencyReport:
    """Residuals of ``R = A A^T``, ``Lambda = A^T A``, ``I = F^T F/(n-1)``,
    ``A = Z^T F/(n-1)`` and ``Z = F A^T``.  Never raises on large residuals."""
    a, f, zz = model.loadings, score_set.f, z.z
    if f.shape != zz.shape:
        raise ShapeError(f"score matrix {f.shape} does not match data {zz.shape}")
    n1 = zz.shape[0] - 1
    return ConsistencyReport(
        r_minus_aat=max_abs(model.r - a @ a.T),
        lambda_minus_ata=max_abs(model.lambda_matrix - a.T @ a),
        identity_minus_ftf=max_abs(identity(model.m) - f.T @ f / n1),
        a_minus_ztf=max_abs(a - zz.T @ f / n1),
        z_minus_fat=max_abs(zz - f @ a.T),
    )
