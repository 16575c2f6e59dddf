"""Command-line front end: ``pcakit {describe,adequacy,pca,reduce,pipeline}``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .dataset_io import FilterPredicate, filter_rows, matrix_csv, read_csv
from .errors import ContractError, PcaKitError
from .pipeline import STAGES, Analysis, analyze
from .reduction import KPolicy, parse_k_policy, scree_data
from .report import text_summary, write_report
from .svg import render_scree_svg

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2

COMMANDS = ("describe", "adequacy", "pca", "reduce", "pipeline")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    input: Path
    columns: tuple[str, ...]
    command: str = "pipeline"
    filters: tuple[FilterPredicate, ...] = ()
    k_policy: KPolicy = "kaiser"
    out: Path = Path(".")
    emit_scree: bool = False
    emit_matrices: bool = False
    quiet: bool = False
    delimiter: str = ","
    stages: tuple[str, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        self.stages = STAGES if self.command == "pipeline" else (self.command,)
        if not self.columns:
            raise UsageError("at least one column is required")
        if isinstance(self.k_policy, int) and not 1 <= self.k_policy <= len(self.columns):
            raise UsageError(
                f"--k fixed:{self.k_policy} is out of range for {len(self.columns)} columns"
            )


def _print_err(msg: str) -> None:
    print(f"pcakit: {msg}", file=sys.stderr)


def _write_outputs(config: RunConfig, result: Analysis) -> None:
    out = config.out
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_bytes(write_report(result))
    scree = None
    if result.reduce is not None:
        scree = result.reduce.scree
    elif result.pca is not None:
        scree = scree_data(result.pca.model.eigenvalues)
    if config.emit_scree and scree is not None:
        (out / "scree.svg").write_bytes(render_scree_svg(scree))
    if config.emit_matrices:
        names = list(result.column_names)
        pcs = [f"PC{j + 1}" for j in range(len(names))]
        (out / "z.csv").write_bytes(matrix_csv(result.standardized.z, names))
        if result.pca is not None:
            (out / "zrot.csv").write_bytes(matrix_csv(result.pca.scores.z_rot, pcs))
            (out / "f.csv").write_bytes(matrix_csv(result.pca.scores.f, [f"{p}_std" for p in pcs]))
        if result.reduce is not None:
            (out / "zapprox.csv").write_bytes(matrix_csv(result.reduce.z_approx, names))
            (out / "xapprox.csv").write_bytes(matrix_csv(result.reduce.x_approx, names))


def run(config: RunConfig) -> int:
    """Execute the configured stage(s); return the process exit status."""
    needed = list(config.columns)
    needed += [p.column for p in config.filters if p.column not in needed]
    try:
        table = read_csv(config.input, needed, delimiter=config.delimiter)
        filtered = filter_rows(table, config.filters)
    except (OSError, PcaKitError) as exc:
        _print_err(f"dataset: {exc}")
        return EXIT_DATA
    try:
        result = analyze(
            filtered,
            config.columns,
            stages=config.stages,
            k_policy=config.k_policy,
            n_raw=table.n_rows,
            filters=[str(p) for p in config.filters],
        )
    except PcaKitError as exc:
        _print_err(str(exc))
        return EXIT_DATA
    try:
        _write_outputs(config, result)
    except OSError as exc:
        _print_err(f"output: {exc}")
        return EXIT_DATA
    if not config.quiet:
        sys.stdout.write(text_summary(result))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, type=Path, help="CSV file with a header row")
    common.add_argument("--columns", required=True, help="comma-separated analysis columns")
    common.add_argument("--filter", action="append", default=[], dest="filters",
                        help='row filter such as "age>=18"; repeat for a conjunction')
    common.add_argument("--k", default="kaiser", help="component policy: kaiser | fixed:N")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("--emit-scree", action="store_true", help="also write scree.svg")
    common.add_argument("--emit-matrices", action="store_true", help="also write matrix CSVs")
    common.add_argument("--quiet", action="store_true", help="suppress the summary on stdout")
    common.add_argument("--delimiter", default=",", help="CSV field delimiter (default ',')")

    parser = argparse.ArgumentParser(prog="pcakit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "describe": "descriptive statistics per column",
        "adequacy": "Bartlett sphericity test and KMO/MSA",
        "pca": "eigenanalysis, loadings, scores and consistency checks",
        "reduce": "dimensional reduction and back-transformation",
        "pipeline": "all stages in order",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    try:
        filters = tuple(FilterPredicate.parse(f) for f in args.filters)
        k_policy = parse_k_policy(args.k)
    except ContractError as exc:
        raise UsageError(str(exc)) from exc
    if len(args.delimiter) != 1:
        raise UsageError("--delimiter must be a single character")
    columns = tuple(c.strip() for c in args.columns.split(",") if c.strip())
    return RunConfig(
        input=args.input,
        columns=columns,
        command=args.command,
        filters=filters,
        k_policy=k_policy,
        out=args.out,
        emit_scree=args.emit_scree,
        emit_matrices=args.emit_matrices,
        quiet=args.quiet,
        delimiter=args.delimiter,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        _print_err(f"usage: {exc}")
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
