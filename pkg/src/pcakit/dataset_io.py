"""CSV ingestion, row filters, and CSV emission of matrices."""

from __future__ import annotations

import csv
import io
import math
import operator
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import ContractError, DataParseError, SchemaError, ShapeError

_COMPARATORS: Mapping[str, Callable[[float, float], bool]] = {
    "<=": operator.le,
    ">=": operator.ge,
    "==": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    ">": operator.gt,
}
_FILTER_RE = re.compile(r"^\s*(?P<column>[^<>=!]+?)\s*(?P<op><=|>=|==|!=|<|>)\s*(?P<value>[^<>=!]+?)\s*$")


@dataclass(frozen=True)
class DataTable:
    column_names: tuple[str, ...]
    columns: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.column_names) != len(self.columns):
            raise ShapeError("one column name per column required")
        lengths = {c.shape[0] for c in self.columns}
        if len(lengths) > 1:
            raise ShapeError(f"columns have unequal lengths {sorted(lengths)}")

    @property
    def n_rows(self) -> int:
        return self.columns[0].shape[0] if self.columns else 0

    def column(self, name: str) -> np.ndarray:
        try:
            return self.columns[self.column_names.index(name)]
        except ValueError:
            raise SchemaError(
                f"unknown column {name!r}; available: {', '.join(self.column_names)}"
            ) from None

    def select(self, names: Sequence[str]) -> "DataTable":
        return DataTable(tuple(names), tuple(self.column(n) for n in names))

    def to_matrix(self, names: Sequence[str] | None = None) -> np.ndarray:
        names = self.column_names if names is None else names
        if not names:
            return np.zeros((self.n_rows, 0))
        return np.column_stack([self.column(n) for n in names]).astype(np.float64)


@dataclass(frozen=True)
class FilterPredicate:
    column: str
    comparator: str
    threshold: float

    def __post_init__(self) -> None:
        if self.comparator not in _COMPARATORS:
            raise ContractError(f"unknown comparator {self.comparator!r}")

    @classmethod
    def parse(cls, text: str) -> "FilterPredicate":
        """Parse ``"<column><op><number>"``, e.g. ``"age>=18"``."""
        match = _FILTER_RE.match(text)
        if not match:
            raise ContractError(f"cannot parse filter {text!r}; expected e.g. 'age>=18'")
        try:
            threshold = float(match["value"])
        except ValueError:
            raise ContractError(f"filter threshold in {text!r} is not a number") from None
        return cls(match["column"], match["op"], threshold)

    def mask(self, table: DataTable) -> np.ndarray:
        values = table.column(self.column)
        compare = _COMPARATORS[self.comparator]
        return np.array([compare(float(v), self.threshold) for v in values], dtype=bool)

    def __str__(self) -> str:
        return f"{self.column}{self.comparator}{self.threshold:g}"


def _parse_cell(text: str, line: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        value = math.nan
    if not math.isfinite(value):
        shown = text if text.strip() else "<empty>"
        raise DataParseError(f"line {line}, column {column!r}: cannot parse {shown!r} as a finite number")
    return value


def read_csv(path: str | Path, selected_columns: Sequence[str], delimiter: str = ",") -> DataTable:
    """Read the named columns of a headed CSV file as floats.

    Raises
    ------
    FileNotFoundError
        If ``path`` does not exist.
    SchemaError
        If a selected column is missing from the header.
    DataParseError
        If a selected cell is empty, non-numeric or non-finite.
    """
    with open(path, newline="", encoding="utf-8-sig") as fh:
        return _read(fh, selected_columns, delimiter)


def read_csv_text(text: str, selected_columns: Sequence[str], delimiter: str = ",") -> DataTable:
    return _read(io.StringIO(text, newline=""), selected_columns, delimiter)


def _read(fh: Iterable[str], selected_columns: Sequence[str], delimiter: str) -> DataTable:
    reader = csv.reader(fh, delimiter=delimiter)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise DataParseError("file is empty; a header row is required") from None
    missing = [c for c in selected_columns if c not in header]
    if missing:
        raise SchemaError(
            f"unknown column(s) {', '.join(map(repr, missing))}; available: {', '.join(header)}"
        )
    index = [header.index(c) for c in selected_columns]
    values: list[list[float]] = [[] for _ in selected_columns]
    for row in reader:
        if not row:
            continue
        for slot, (j, name) in enumerate(zip(index, selected_columns)):
            cell = row[j] if j < len(row) else ""
            values[slot].append(_parse_cell(cell, reader.line_num, name))
    return DataTable(
        tuple(selected_columns),
        tuple(np.asarray(v, dtype=np.float64) for v in values),
    )


def filter_rows(table: DataTable, predicates: Sequence[FilterPredicate]) -> DataTable:
    """Keep rows satisfying every predicate, preserving order."""
    keep = np.ones(table.n_rows, dtype=bool)
    for predicate in predicates:
        keep &= predicate.mask(table)
    return DataTable(table.column_names, tuple(c[keep] for c in table.columns))


def _format(value: float) -> str:
    return repr(float(value))


def matrix_csv(matrix: np.ndarray, header: Sequence[str]) -> bytes:
    """Serialize a matrix with a header row; values round-trip exactly."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != len(header):
        raise ShapeError(f"{len(header)} header names for a matrix of shape {matrix.shape}")
    out = io.StringIO(newline="")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in matrix:
        writer.writerow([_format(v) for v in row])
    return out.getvalue().encode("utf-8")


def write_csv(table: DataTable, path: str | Path) -> None:
    Path(path).write_bytes(matrix_csv(table.to_matrix(), table.column_names))
