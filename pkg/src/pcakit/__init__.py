"""pcakit: principal component analysis of the sample correlation matrix.

The public surface re-exports the building blocks; see the submodules for
details.
"""

from .adequacy import AdequacyReport, assess, bartlett_sphericity, chi_square_sf, kmo_msa, partial_correlations
from .dataset_io import DataTable, FilterPredicate, filter_rows, read_csv, write_csv
from .descriptive import (
    ColumnSummary,
    anomaly_counts,
    describe,
    mean_sd,
    quantile_type7,
    standardized_kurtosis,
    standardized_skewness,
)
from .engine import ConsistencyReport, PcaModel, ScoreSet, consistency_check, correlation_matrix, fit, scores
from .errors import (
    ContractError,
    ConvergenceError,
    DataParseError,
    DegenerateColumnError,
    InsufficientDataError,
    PcaKitError,
    SchemaError,
    ShapeError,
    SingularMatrixError,
    UndefinedMeasureError,
)
from .linalg import EigenDecomposition, determinant, eigen_symmetric, invert, matmul, transpose
from .pipeline import Analysis, analyze
from .reduction import ReducedModel, ScreeData, reconstruct_x, reconstruct_z, reduce, scree_data, select_components
from .report import write_report
from .standardize import StandardizedData, destandardize, standardize
from .svg import render_scree_svg

__version__ = "0.1.0"

__all__ = [
    "AdequacyReport",
    "Analysis",
    "ColumnSummary",
    "ConsistencyReport",
    "ContractError",
    "ConvergenceError",
    "DataParseError",
    "DataTable",
    "DegenerateColumnError",
    "EigenDecomposition",
    "FilterPredicate",
    "InsufficientDataError",
    "PcaKitError",
    "PcaModel",
    "ReducedModel",
    "SchemaError",
    "ScoreSet",
    "ScreeData",
    "ShapeError",
    "SingularMatrixError",
    "StandardizedData",
    "UndefinedMeasureError",
    "analyze",
    "anomaly_counts",
    "assess",
    "bartlett_sphericity",
    "chi_square_sf",
    "consistency_check",
    "correlation_matrix",
    "describe",
    "destandardize",
    "determinant",
    "eigen_symmetric",
    "filter_rows",
    "fit",
    "invert",
    "kmo_msa",
    "matmul",
    "mean_sd",
    "partial_correlations",
    "quantile_type7",
    "read_csv",
    "reconstruct_x",
    "reconstruct_z",
    "reduce",
    "render_scree_svg",
    "scores",
    "scree_data",
    "select_components",
    "standardize",
    "standardized_kurtosis",
    "standardized_skewness",
    "transpose",
    "write_csv",
    "write_report",
]
