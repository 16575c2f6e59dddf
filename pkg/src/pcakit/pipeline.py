"""Run the analysis stages in order and collect their results."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import adequacy, descriptive, engine, reduction
from .dataset_io import DataTable
from .errors import PcaKitError
from .linalg import determinant, identity, invert, max_abs, trace
from .standardize import StandardizedData, standardize

STAGES = ("describe", "adequacy", "pca", "reduce")


class StageError(PcaKitError):
    """Wraps a module error with the name of the stage that raised it."""

    def __init__(self, stage: str, error: Exception):
        super().__init__(f"{stage}: {error}")
        self.stage = stage
        self.error = error


@dataclass(frozen=True)
class PcaStage:
    model: engine.PcaModel
    scores: engine.ScoreSet
    consistency: engine.ConsistencyReport
    r_determinant: float
    r_trace: float
    r_inverse: np.ndarray
    rotation_determinant: float
    orthogonality: tuple[float, float]
    diagonalization_residual: float
    zrot_variances: np.ndarray
    zrot_correlation_residual: float
    zrot_summary: list[descriptive.ColumnSummary]
    f_summary: list[descriptive.ColumnSummary]


@dataclass(frozen=True)
class ReduceStage:
    policy: reduction.KPolicy
    reduced: reduction.ReducedModel
    scree: reduction.ScreeData
    z_approx: np.ndarray
    x_approx: np.ndarray
    reconstruction_error: float
    f_red_variances: np.ndarray
    z_approx_correlation: np.ndarray


@dataclass
class Analysis:
    column_names: tuple[str, ...]
    n_raw: int
    filters: tuple[str, ...]
    stages: tuple[str, ...]
    x: np.ndarray
    standardized: StandardizedData | None = None
    describe: tuple[list[descriptive.ColumnSummary], list[descriptive.ColumnSummary]] | None = None
    adequacy: adequacy.AdequacyReport | None = None
    pca: PcaStage | None = None
    reduce: ReduceStage | None = None

    @property
    def n(self) -> int:
        return self.x.shape[0]


def _sample_correlation(a: np.ndarray) -> np.ndarray:
    centered = a - a.mean(axis=0)
    sd = np.sqrt((centered**2).sum(axis=0))
    sd = np.where(sd == 0.0, 1.0, sd)
    u = centered / sd
    return u.T @ u


def _pca_stage(st: StandardizedData) -> PcaStage:
    model = engine.fit(st)
    sc = engine.scores(model, st)
    v = model.rotation
    m = model.m
    zrot_var = sc.z_rot.var(axis=0, ddof=1)
    pc_names = [f"PC{j + 1}" for j in range(m)]
    return PcaStage(
        model=model,
        scores=sc,
        consistency=engine.consistency_check(model, st, sc),
        r_determinant=determinant(model.r),
        r_trace=trace(model.r),
        r_inverse=invert(model.r),
        rotation_determinant=determinant(v),
        orthogonality=(max_abs(v.T @ v - identity(m)), max_abs(v @ v.T - identity(m))),
        diagonalization_residual=max_abs(v.T @ model.r @ v - model.lambda_matrix),
        zrot_variances=zrot_var,
        zrot_correlation_residual=max_abs(_sample_correlation(sc.z_rot) - identity(m)),
        zrot_summary=descriptive.describe(sc.z_rot, pc_names),
        f_summary=descriptive.describe(sc.f, [f"{p}_std" for p in pc_names]),
    )


def _reduce_stage(st: StandardizedData, model: engine.PcaModel, policy: reduction.KPolicy) -> ReduceStage:
    k = reduction.select_components(model.eigenvalues, policy)
    red = reduction.reduce(model, st, k)
    z_approx = reduction.reconstruct_z(red)
    return ReduceStage(
        policy=policy,
        reduced=red,
        scree=reduction.scree_data(model.eigenvalues),
        z_approx=z_approx,
        x_approx=reduction.reconstruct_x(red, st.center, st.scale),
        reconstruction_error=max_abs(st.z - z_approx),
        f_red_variances=red.f_red.var(axis=0, ddof=1),
        z_approx_correlation=_sample_correlation(z_approx),
    )


def analyze(
    table: DataTable,
    columns: Sequence[str],
    stages: Iterable[str] = STAGES,
    k_policy: reduction.KPolicy = "kaiser",
    n_raw: int | None = None,
    filters: Sequence[str] = (),
) -> Analysis:
    """Run ``stages`` (any subset of ``describe, adequacy, pca, reduce``) on ``columns`` of ``table``.

    Module errors are re-raised as :class:`StageError` naming the stage.
    """
    wanted = tuple(s for s in STAGES if s in set(stages))
    unknown = set(stages) - set(STAGES)
    if unknown:
        raise ValueError(f"unknown stage(s): {', '.join(sorted(unknown))}")
    x = table.to_matrix(columns)
    result = Analysis(
        column_names=tuple(columns),
        n_raw=table.n_rows if n_raw is None else n_raw,
        filters=tuple(filters),
        stages=wanted,
        x=x,
    )

    def guarded(stage, fn, *args):
        try:
            return fn(*args)
        except PcaKitError as exc:
            raise StageError(stage, exc) from exc

    st = guarded("standardize", standardize, x, columns)
    result.standardized = st
    if "describe" in wanted:
        result.describe = guarded(
            "describe",
            lambda: (descriptive.describe(x, columns), descriptive.describe(st.z, columns)),
        )
    model_needed = "pca" in wanted or "reduce" in wanted
    if "adequacy" in wanted:
        r = guarded("adequacy", engine.correlation_matrix, st)
        result.adequacy = guarded("adequacy", adequacy.assess, r, st.n, columns)
    if model_needed:
        pca_stage = guarded("pca", _pca_stage, st)
        if "pca" in wanted:
            result.pca = pca_stage
        if "reduce" in wanted:
            result.reduce = guarded("reduce", _reduce_stage, st, pca_stage.model, k_policy)
    return result
