"""Deterministic JSON report and plain-text summary of an :class:`Analysis`."""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .descriptive import ColumnSummary
from .pipeline import Analysis

SCHEMA = "pcakit.report/1"
PREVIEW_ROWS = 6


def _num(value: float) -> str:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite value {value!r}")
    if value == 0.0:
        return "0.0"
    text = format(value, ".17g")
    if "e" not in text and "." not in text:
        text += ".0"
    return text


def _encode(obj: Any, indent: int, level: int = 0) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(obj, (list, tuple)):
        # numeric rows stay on one line so matrices read as grids
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in obj) + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> bytes:
    """Serialize with reals at 17 significant digits and insertion-ordered keys."""
    return (_encode(obj, indent=2) + "\n").encode("utf-8")


def _summary(s: ColumnSummary) -> dict:
    return {
        "name": s.name,
        "n": s.n,
        "mean": s.mean,
        "sd": s.sd,
        "std_skewness": s.std_skewness,
        "std_kurtosis": s.std_kurtosis,
        "approx_normal": s.approx_normal,
        "outliers": s.outliers,
        "extremal_values": s.extremal_values,
        "six_sigma_events": s.six_sigma_events,
        "five_number": dict(zip(("min", "q1", "median", "q3", "max"), s.five_number)),
    }


def _head_tail(a: np.ndarray) -> dict:
    return {"head": a[:PREVIEW_ROWS], "tail": a[-PREVIEW_ROWS:]}


def report_dict(result: Analysis) -> dict:
    doc: dict[str, Any] = {
        "schema": SCHEMA,
        "data": {
            "columns": list(result.column_names),
            "filters": list(result.filters),
            "n_raw": result.n_raw,
            "n": result.n,
        },
    }
    if result.describe is not None:
        x_summaries, z_summaries = result.describe
        doc["descriptive"] = {
            "x": [_summary(s) for s in x_summaries],
            "z": [_summary(s) for s in z_summaries],
        }
    if result.adequacy is not None:
        a = result.adequacy
        doc["adequacy"] = {
            "bartlett": {
                "x2": a.bartlett_x2,
                "df": a.bartlett_df,
                "p": a.bartlett_p,
                "p_underflow": a.p_underflow,
                "p_display": a.p_display,
            },
            "kmo": a.kmo,
            "msa": dict(a.msa),
        }
    if result.pca is not None:
        p = result.pca
        model = p.model
        doc["pca"] = {
            "correlation": {
                "matrix": model.r,
                "determinant": p.r_determinant,
                "trace": p.r_trace,
                "inverse": p.r_inverse,
            },
            "eigenvalues": model.eigenvalues,
            "proportion": model.proportion,
            "cumulative": model.cumulative,
            "kaiser": list(model.kaiser_flags),
            "rotation": model.rotation,
            "rotation_determinant": p.rotation_determinant,
            "lambda_inverse": 1.0 / model.eigenvalues,
            "loadings": model.loadings,
            "checks": {
                "vtv_minus_identity": p.orthogonality[0],
                "vvt_minus_identity": p.orthogonality[1],
                "vtrv_minus_lambda": p.diagonalization_residual,
                "zrot_correlation_minus_identity": p.zrot_correlation_residual,
            },
            "consistency": p.consistency.as_dict(),
            "zrot_variances": p.zrot_variances,
            "zrot": [_summary(s) for s in p.zrot_summary],
            "f": [_summary(s) for s in p.f_summary],
            "f_preview": _head_tail(p.scores.f),
        }
    if result.reduce is not None:
        r = result.reduce
        red = r.reduced
        doc["reduction"] = {
            "policy": r.policy if isinstance(r.policy, str) else f"fixed:{r.policy}",
            "k": red.k,
            "explained": red.explained,
            "lambda_red": red.lambda_red,
            "lambda_red_inverse": red.lambda_red_inverse,
            "lambda_red_residual": red.lambda_red_residual,
            "v_red": red.v_red,
            "a_red": red.a_red,
            "f_red_variances": r.f_red_variances,
            "scree": {
                "indices": list(r.scree.indices),
                "eigenvalues": list(r.scree.eigenvalues),
                "kaiser_line": r.scree.kaiser_line,
            },
            "reconstruction_error": r.reconstruction_error,
            "z_approx_correlation": r.z_approx_correlation,
            "z_approx_preview": _head_tail(r.z_approx),
            "x_approx_preview": _head_tail(r.x_approx),
        }
    return doc


def write_report(result: Analysis) -> bytes:
    return dumps(report_dict(result))


def _g(value: float) -> str:
    return f"{value:.7g}"


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    line = lambda cells: "  ".join(c.rjust(w) for c, w in zip(cells, widths))  # noqa: E731
    return "\n".join([line(header)] + [line(r) for r in rows])


def text_summary(result: Analysis) -> str:
    """Human-readable digest: 7 significant digits, 4 decimals for checks."""
    parts = [f"n = {result.n} (of {result.n_raw} rows read); columns: {', '.join(result.column_names)}"]
    if result.describe is not None:
        rows = [
            [s.name, _g(s.mean), _g(s.sd), _g(s.std_skewness), _g(s.std_kurtosis),
             "yes" if s.approx_normal else "no", str(s.outliers), str(s.extremal_values),
             str(s.six_sigma_events)]
            for s in result.describe[0]
        ]
        parts.append("[describe]\n" + _table(
            ["column", "mean", "sd", "std.skew", "std.kurt", "normal", "outliers", "extremal", "6-sigma"], rows))
    if result.adequacy is not None:
        a = result.adequacy
        msa = ", ".join(f"{k} {_g(v)}" for k, v in a.msa.items())
        parts.append(
            "[adequacy]\n"
            f"Bartlett X2 = {a.bartlett_x2:.2f}, df = {a.bartlett_df}, p-value {a.p_display if a.p_underflow else '= ' + a.p_display}\n"
            f"KMO = {_g(a.kmo)}\nMSA: {msa}"
        )
    if result.pca is not None:
        p = result.pca
        m = p.model
        rows = [
            [f"PC{j + 1}", _g(lam), f"{prop:.4f}", f"{cum:.4f}", "yes" if flag else "no"]
            for j, (lam, prop, cum, flag) in enumerate(
                zip(m.eigenvalues, m.proportion, m.cumulative, m.kaiser_flags))
        ]
        parts.append(
            "[pca]\n"
            f"det(R) = {_g(p.r_determinant)}, trace(R) = {_g(p.r_trace)}, det(V) = {p.rotation_determinant:.4f}\n"
            + _table(["component", "eigenvalue", "proportion", "cumulative", "lambda>1"], rows)
            + f"\nmax consistency residual = {p.consistency.worst:.4f}"
        )
    if result.reduce is not None:
        red = result.reduce.reduced
        parts.append(
            "[reduce]\n"
            f"k = {red.k}, explained = {red.explained:.4f}, "
            f"max |Z - Z_approx| = {_g(result.reduce.reconstruction_error)}"
        )
    return "\n\n".join(parts) + "\n"
