"""Sampling adequacy before PCA: Bartlett's sphericity test and KMO/MSA."""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    ContractError,
    ConvergenceError,
    InsufficientDataError,
    SingularMatrixError,
    UndefinedMeasureError,
)
from .linalg import Matrix, MatrixLike, as_matrix, determinant, invert, is_symmetric

P_UNDERFLOW = sys.float_info.epsilon  # 2.22e-16
_GAMMA_EPS = 1e-15
_GAMMA_MAX_ITER = 100_000
_TINY = 1e-300


def _lower_gamma_series(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) by its power series."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_GAMMA_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _GAMMA_EPS:
            return total * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise ConvergenceError("incomplete gamma series did not converge", abs(term))


def _upper_gamma_cf(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) by modified Lentz continued fraction."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _GAMMA_MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_EPS:
            return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h
    raise ConvergenceError("incomplete gamma continued fraction did not converge", abs(delta - 1.0))


def chi_square_sf(x: float, df: int) -> float:
    """Upper-tail probability ``P(X >= x)`` of a chi-square variable with ``df`` degrees of freedom."""
    if df < 1 or int(df) != df:
        raise ContractError(f"degrees of freedom must be a positive integer, got {df}")
    if not x >= 0.0 or math.isinf(x):
        raise ContractError(f"chi-square statistic must be finite and non-negative, got {x}")
    a, half = 0.5 * df, 0.5 * x
    if half == 0.0:
        return 1.0
    if x < df + 1:
        return max(0.0, 1.0 - _lower_gamma_series(a, half))
    return min(1.0, _upper_gamma_cf(a, half))


def _check_correlation(r: Matrix) -> int:
    m, cols = r.shape
    if m != cols:
        raise ContractError(f"correlation matrix must be square, got {m}x{cols}")
    if not is_symmetric(r):
        raise ContractError("correlation matrix must be symmetric")
    if np.max(np.abs(np.diag(r) - 1.0), initial=0.0) > 1e-8:
        raise ContractError("correlation matrix must have a unit diagonal")
    return m


def bartlett_sphericity(r: MatrixLike, n: int) -> tuple[float, int, float]:
    """Bartlett's test that ``r`` is an identity correlation matrix.

    Returns ``(x2, df, p)`` with ``x2 = -(n - 1 - (2m + 5)/6) ln det r`` and
    ``df = m (m - 1) / 2``.
    """
    r = as_matrix(r)
    m = _check_correlation(r)
    if n <= m:
        raise InsufficientDataError(f"Bartlett's test needs n > m (n={n}, m={m})")
    det = determinant(r)
    if det <= 0.0:
        raise SingularMatrixError(f"correlation matrix determinant is {det:.6g}, not positive")
    df = m * (m - 1) // 2
    x2 = max(0.0, -(n - 1 - (2 * m + 5) / 6.0) * math.log(det))
    # m = 1 has nothing to test
    p = chi_square_sf(x2, df) if df else 1.0
    return x2, df, p


def partial_correlations(r: MatrixLike) -> Matrix:
    """Anti-image partial correlations from the inverse correlation matrix (unit diagonal)."""
    c = invert(as_matrix(r))
    d = np.sqrt(np.diag(c))
    q = -c / np.outer(d, d)
    np.fill_diagonal(q, 1.0)
    return q


def kmo_msa(r: MatrixLike, names: Sequence[str]) -> tuple[float, dict[str, float]]:
    """Overall Kaiser-Meyer-Olkin measure and per-variable MSA.

    Each is the ratio of summed squared correlations to summed squared
    correlations plus summed squared partial correlations, over the
    off-diagonal entries (all of them for KMO, one row for an MSA).
    """
    r = as_matrix(r)
    m = _check_correlation(r)
    if m < 2:
        raise ContractError("KMO needs at least two variables")
    if len(names) != m:
        raise ContractError(f"{len(names)} names given for {m} variables")
    off = ~np.eye(m, dtype=bool)
    r2 = np.where(off, r, 0.0) ** 2
    if not np.any(r2):
        raise UndefinedMeasureError("KMO undefined: all off-diagonal correlations are zero")
    q2 = np.where(off, partial_correlations(r), 0.0) ** 2
    kmo = float(r2.sum() / (r2.sum() + q2.sum()))
    msa: dict[str, float] = {}
    for i, name in enumerate(names):
        num = float(r2[i].sum())
        if num == 0.0:
            raise UndefinedMeasureError(f"MSA undefined for {name!r}: uncorrelated with all others")
        msa[name] = num / (num + float(q2[i].sum()))
    return kmo, msa


@dataclass(frozen=True)
class AdequacyReport:
    bartlett_x2: float
    bartlett_df: int
    bartlett_p: float
    kmo: float
    msa: dict[str, float] = field(default_factory=dict)

    @property
    def p_underflow(self) -> bool:
        return self.bartlett_p < P_UNDERFLOW

    @property
    def p_display(self) -> str:
        return "< 2.22e-16" if self.p_underflow else f"{self.bartlett_p:.7g}"


def assess(r: MatrixLike, n: int, names: Sequence[str]) -> AdequacyReport:
    x2, df, p = bartlett_sphericity(r, n)
    kmo, msa = kmo_msa(r, names)
    return AdequacyReport(bartlett_x2=x2, bartlett_df=df, bartlett_p=p, kmo=kmo, msa=msa)
