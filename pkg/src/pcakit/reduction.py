"""Component selection and dimensional reduction with back-transformation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import ContractError, ConvergenceError, ShapeError
from .engine import CONSISTENCY_TOL, PcaModel
from .linalg import Matrix, max_abs
from .standardize import StandardizedData, destandardize

KAISER_THRESHOLD = 1.0

KPolicy = Union[str, int]


def parse_k_policy(text: str) -> KPolicy:
    """Parse ``"kaiser"`` or ``"fixed:N"`` into a policy value."""
    text = text.strip().lower()
    if text == "kaiser":
        return "kaiser"
    if text.startswith("fixed:"):
        try:
            return int(text.split(":", 1)[1])
        except ValueError:
            pass
    raise ContractError(f"unknown component policy {text!r}; use 'kaiser' or 'fixed:N'")


def select_components(eigenvalues: Sequence[float], policy: KPolicy = "kaiser") -> int:
    """Number of components to keep.

    ``"kaiser"`` keeps every eigenvalue strictly above 1, but never fewer
    than one component.  An integer policy is a fixed count in ``1..m``.
    """
    lam = np.asarray(eigenvalues, dtype=np.float64)
    m = lam.size
    if m == 0:
        raise ContractError("no eigenvalues to select from")
    if policy == "kaiser":
        return max(1, int(np.sum(lam > KAISER_THRESHOLD)))
    if isinstance(policy, (int, np.integer)) and not isinstance(policy, bool):
        if not 1 <= policy <= m:
            raise ContractError(f"cannot keep {policy} of {m} components")
        return int(policy)
    raise ContractError(f"unknown component policy {policy!r}")


@dataclass(frozen=True)
class ReducedModel:
    k: int
    v_red: Matrix
    lambda_red: np.ndarray
    a_red: Matrix
    f_red: Matrix
    explained: float
    lambda_red_residual: float

    @property
    def lambda_red_inverse(self) -> np.ndarray:
        return 1.0 / self.lambda_red


@dataclass(frozen=True)
class ScreeData:
    indices: tuple[int, ...]
    eigenvalues: tuple[float, ...]
    kaiser_line: float = KAISER_THRESHOLD


def reduce(model: PcaModel, z: StandardizedData, k: int) -> ReducedModel:
    """Keep the first ``k`` components of ``model``.

    The reduced eigenvalue matrix is recomputed as ``V_red^T R V_red`` and
    must agree with the leading eigenvalues to ``1e-9``.
    """
    m = model.m
    if not 1 <= k <= m:
        raise ContractError(f"cannot keep {k} of {m} components")
    if z.m != m:
        raise ShapeError(f"data has {z.m} columns, model has {m}")
    v_red = np.array(model.rotation[:, :k])
    lambda_red = np.array(model.eigenvalues[:k])
    projected = v_red.T @ model.r @ v_red
    residual = max_abs(projected - np.diag(lambda_red))
    if residual > CONSISTENCY_TOL:
        raise ConvergenceError("reduced eigenvalue matrix disagrees with the eigenvalues", residual)
    a_red = v_red * np.sqrt(lambda_red)
    f_red = z.z @ v_red / np.sqrt(lambda_red)
    return ReducedModel(
        k=k,
        v_red=v_red,
        lambda_red=lambda_red,
        a_red=a_red,
        f_red=f_red,
        explained=float(np.sum(lambda_red) / m),
        lambda_red_residual=residual,
    )


def reconstruct_z(red: ReducedModel) -> Matrix:
    """Rank-``k`` approximation of the standardized data, ``F_red A_red^T``."""
    return red.f_red @ red.a_red.T


def reconstruct_x(red: ReducedModel, center: Sequence[float], scale: Sequence[float]) -> Matrix:
    return destandardize(reconstruct_z(red), center, scale)


def scree_data(eigenvalues: Sequence[float]) -> ScreeData:
    lam = [float(x) for x in eigenvalues]
    if not lam:
        raise ContractError("scree data needs at least one eigenvalue")
    if any(b > a for a, b in zip(lam, lam[1:])):
        raise ContractError("eigenvalues must be sorted descending")
    return ScreeData(indices=tuple(range(1, len(lam) + 1)), eigenvalues=tuple(lam))
