"""Dense real matrix routines: products, determinant, inverse, symmetric eigensolver.

Matrices are two-dimensional ``float64`` numpy arrays.  Products and
transposes go straight to numpy; elimination and the Jacobi eigensolver are
written out here so the numerical path is explicit and checkable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from numpy.typing import NDArray

from .errors import ContractError, ConvergenceError, ShapeError, SingularMatrixError

Matrix = NDArray[np.float64]
MatrixLike = Union[Matrix, Sequence[Sequence[float]]]

SINGULARITY_RTOL = 1e-12
SYMMETRY_RTOL = 1e-10
JACOBI_RTOL = 1e-12
JACOBI_MAX_SWEEPS = 64


def as_matrix(a: MatrixLike) -> Matrix:
    """Coerce ``a`` to a finite 2-D float array (copying only when needed)."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got {m.ndim} dimensions")
    if not np.all(np.isfinite(m)):
        raise ContractError("matrix contains NaN or infinite entries")
    return m


def _require_square(a: Matrix, what: str) -> int:
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{what} requires a square matrix, got {a.shape[0]}x{a.shape[1]}")
    return a.shape[0]


def identity(m: int) -> Matrix:
    return np.eye(m, dtype=np.float64)


def matmul(a: MatrixLike, b: MatrixLike) -> Matrix:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}"
        )
    return a @ b


def transpose(a: MatrixLike) -> Matrix:
    return np.ascontiguousarray(as_matrix(a).T)


def trace(a: MatrixLike) -> float:
    a = as_matrix(a)
    _require_square(a, "trace")
    return float(np.trace(a))


def max_abs(a: MatrixLike) -> float:
    """Largest absolute entry; 0 for an empty matrix."""
    a = np.asarray(a, dtype=np.float64)
    return float(np.max(np.abs(a))) if a.size else 0.0


def determinant(a: MatrixLike) -> float:
    """Determinant by Gaussian elimination with partial pivoting."""
    u = as_matrix(a).copy()
    m = _require_square(u, "determinant")
    sign = 1.0
    for col in range(m):
        pivot = col + int(np.argmax(np.abs(u[col:, col])))
        if u[pivot, col] == 0.0:
            return 0.0
        if pivot != col:
            u[[col, pivot]] = u[[pivot, col]]
            sign = -sign
        factors = u[col + 1 :, col] / u[col, col]
        u[col + 1 :, col:] -= np.outer(factors, u[col, col:])
    return sign * float(np.prod(np.diag(u)))


def invert(a: MatrixLike) -> Matrix:
    """Gauss-Jordan inverse with partial pivoting.

    Raises
    ------
    SingularMatrixError
        If a pivot falls below ``1e-12`` times the largest row maximum of the
        input.
    """
    work = as_matrix(a).copy()
    m = _require_square(work, "invert")
    if m == 0:
        return np.zeros((0, 0))
    threshold = SINGULARITY_RTOL * float(np.max(np.abs(work)))
    inv = identity(m)
    for col in range(m):
        pivot = col + int(np.argmax(np.abs(work[col:, col])))
        if abs(work[pivot, col]) <= threshold or work[pivot, col] == 0.0:
            raise SingularMatrixError(
                f"matrix is singular to working precision (pivot column {col})"
            )
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
            inv[[col, pivot]] = inv[[pivot, col]]
        p = work[col, col]
        work[col] /= p
        inv[col] /= p
        factors = work[:, col].copy()
        factors[col] = 0.0
        work -= np.outer(factors, work[col])
        inv -= np.outer(factors, inv[col])
    return inv


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order; column ``j`` of ``vectors`` pairs with ``values[j]``."""

    values: NDArray[np.float64]
    vectors: Matrix


def is_symmetric(a: Matrix, rtol: float = SYMMETRY_RTOL) -> bool:
    scale = max(1.0, max_abs(a))
    return max_abs(a - a.T) <= rtol * scale


def _off_norm(a: Matrix) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _canonical_sign(vectors: Matrix) -> Matrix:
    # largest-magnitude entry made non-negative; near-ties go to the lowest row
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = np.abs(out[:, j])
        big = col.max()
        lead = int(np.flatnonzero(col >= big * (1.0 - 1e-12))[0])
        if out[lead, j] < 0.0:
            out[:, j] = -out[:, j]
    return out


def eigen_symmetric(s: MatrixLike) -> EigenDecomposition:
    """Eigen-decompose a real symmetric matrix with the cyclic Jacobi method.

    Sweeps over all ``(p, q)`` pairs with ``p < q`` until the off-diagonal
    Frobenius norm is at most ``1e-12`` times the Frobenius norm of ``s``.

    Parameters
    ----------
    s : array_like
        Square matrix, symmetric within ``1e-10`` relative tolerance.

    Returns
    -------
    EigenDecomposition
        Values sorted descending.  Each eigenvector is signed so that its
        entry of largest magnitude is non-negative.

    Raises
    ------
    ContractError
        If ``s`` is not symmetric.
    ConvergenceError
        If 64 sweeps do not reach the tolerance.
    """
    a = as_matrix(s)
    m = _require_square(a, "eigen_symmetric")
    if not is_symmetric(a):
        raise ContractError("eigen_symmetric requires a symmetric matrix")
    a = 0.5 * (a + a.T)
    v = identity(m)
    target = JACOBI_RTOL * float(np.linalg.norm(a))

    converged = _off_norm(a) <= target
    sweeps = 0
    while not converged:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise ConvergenceError(
                f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps",
                _off_norm(a),
            )
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                sn = t * c
                app, aqq = a[p, p], a[q, q]
                # A <- J^T A J, J the plane rotation in (p, q)
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - sn * col_q
                a[:, q] = sn * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - sn * row_q
                a[q, :] = sn * row_p + c * row_q
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - sn * vq
                v[:, q] = sn * vp + c * vq
        sweeps += 1
        converged = _off_norm(a) <= target

    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return EigenDecomposition(values=values[order], vectors=_canonical_sign(v[:, order]))
