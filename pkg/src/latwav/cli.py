"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import cascade as cascade_mod
from . import filters as filters_mod
from . import jsonio
from .config import Config
from .errors import InputFormatError, LatwavError
from .intlat import smith_normal_form
from .quincunx import support_pattern
from .transfer import transfer
from .verify import lawton_residuals, qmf_check

QMF_SEED = 0
QMF_SAMPLES = 1024


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latwav",
        description="Reduced Lawton systems, lattice encodings, and "
        "cross-dimension transfer of scaling filters",
    )
    parser.add_argument("--config", help="JSON file overriding default limits")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", help="Smith normal form of a determinant +/-2 matrix")
    p.add_argument("matrix", help="matrix JSON file")

    p = sub.add_parser("basis", help="adapted basis and coset representative")
    p.add_argument("matrix", help="matrix JSON file")

    p = sub.add_parser("reduce", help="reduced system of a filter's support")
    p.add_argument("filter", help="filter JSON file")

    p = sub.add_parser("verify", help="residuals of a filter against its system")
    p.add_argument("filter", help="filter JSON file")
    p.add_argument("--tolerance", type=float, default=None,
                   help="override the pass/fail tolerance")

    p = sub.add_parser("transfer", help="transfer a filter to a target matrix")
    p.add_argument("filter", help="filter JSON file")
    p.add_argument("--target", required=True, help="target matrix JSON file")

    p = sub.add_parser("cascade", help="cascade approximation of the scaling function")
    p.add_argument("filter", help="filter JSON file")
    p.add_argument("--levels", type=int, default=None, help="number of refinement levels")
    p.add_argument("--tol", type=float, default=0.0,
                   help="stop early when the level difference drops below this")

    p = sub.add_parser("quincunx", help="quincunx Shannon coefficient tools")
    qsub = p.add_subparsers(dest="subcommand", required=True)
    q = qsub.add_parser("pattern", help="coefficient window and parity pattern")
    q.add_argument("--width", type=int, required=True, help="window half-width")

    p = sub.add_parser("encode", help="encoding diagnostics")
    esub = p.add_subparsers(dest="subcommand", required=True)
    e = esub.add_parser("eval", help="evaluate the encodings at one point")
    e.add_argument("--d", type=int, required=True, help="dimension")
    e.add_argument("--N", type=int, required=True, help="window exponent")
    e.add_argument("--point", required=True, help="comma-separated coordinates")

    p = sub.add_parser("bundled", help="emit a bundled example filter as JSON")
    p.add_argument("name", choices=sorted(filters_mod.BUNDLED_FILTERS),
                   help="bundled filter name")

    return parser


def _out_dir(config: Config) -> Path:
    override = os.environ.get("LATWAV_OUTPUT_DIR")
    path = Path(override) if override else Path(config.output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _emit(data) -> None:
    print(jsonio.canonical_dumps(data))


def _cmd_snf(args, config: Config) -> int:
    matrix = jsonio.matrix_from_json(jsonio.load_json(args.matrix), args.matrix)
    _emit(jsonio.snf_to_json(smith_normal_form(matrix)))
    return 0


def _cmd_basis(args, config: Config) -> int:
    matrix = jsonio.matrix_from_json(jsonio.load_json(args.matrix), args.matrix)
    _emit(jsonio.basis_to_json(smith_normal_form(matrix)))
    return 0


def _cmd_reduce(args, config: Config) -> int:
    filt = jsonio.filter_from_json(jsonio.load_json(args.filter), args.filter)
    _emit(jsonio.system_to_json(filt.system()))
    return 0


def _cmd_verify(args, config: Config) -> int:
    filt = jsonio.filter_from_json(jsonio.load_json(args.filter), args.filter)
    tolerance = args.tolerance if args.tolerance is not None else config.tolerance
    report = lawton_residuals(filt)
    deviation = qmf_check(filt, samples=QMF_SAMPLES, seed=QMF_SEED)
    data = jsonio.residual_report_to_json(report)
    data.update({
        "qmf_deviation": deviation,
        "qmf_samples": QMF_SAMPLES,
        "qmf_seed": QMF_SEED,
        "tolerance": tolerance,
        "pass": report.passes(tolerance),
    })
    _emit(data)
    return 0 if report.passes(tolerance) else 1


def _cmd_transfer(args, config: Config) -> int:
    filt = jsonio.filter_from_json(jsonio.load_json(args.filter), args.filter)
    target = jsonio.dilation_from_json(jsonio.load_json(args.target), args.target)
    report = transfer(filt, target)
    _emit(jsonio.transfer_report_to_json(report))
    return 0


def _cmd_cascade(args, config: Config) -> int:
    filt = jsonio.filter_from_json(jsonio.load_json(args.filter), args.filter)
    levels = args.levels if args.levels is not None else config.cascade_level_cap
    if levels > config.cascade_level_cap:
        raise InputFormatError(
            f"--levels {levels} exceeds the configured cap {config.cascade_level_cap}"
        )
    grid, diffs = cascade_mod.run_cascade(
        filt, max_level=levels, tol=args.tol, cell_budget=config.cell_budget,
        residual_warn_tolerance=config.tolerance,
    )
    out = _out_dir(config)
    stem = Path(args.filter).stem
    (out / f"{stem}.grid.csv").write_text(jsonio.grid_to_csv(grid))
    (out / f"{stem}.grid.json").write_text(
        jsonio.canonical_dumps(jsonio.grid_sidecar_json(grid))
    )
    conv_lines = ["level,l2_difference"]
    conv_lines += [f"{i + 1},{d!r}" for i, d in enumerate(diffs)]
    (out / f"{stem}.convergence.csv").write_text("\n".join(conv_lines) + "\n")
    if filt.dim == 1:
        (out / f"{stem}.phi.csv").write_text(jsonio.grid_centers_1d_csv(grid))
    _emit({
        "level": grid.level,
        "cells": len(grid.cells),
        "integral": float(abs(grid.integral())),
        "differences": diffs,
        "output_dir": str(out),
    })
    return 0


def _cmd_quincunx(args, config: Config) -> int:
    report = support_pattern(args.width)
    out = _out_dir(config)
    lines = ["m,n,s"]
    for (m, n) in sorted(report.values):
        lines.append(f"{m},{n},{report.values[(m, n)]!r}")
    (out / f"quincunx_pattern_w{args.width}.csv").write_text("\n".join(lines) + "\n")
    _emit({
        "half_width": report.half_width,
        "min_odd_magnitude": report.min_odd_magnitude,
        "max_even_magnitude": report.max_even_magnitude,
        "pattern_holds": report.pattern_holds,
        "output_dir": str(out),
    })
    return 0 if report.pattern_holds else 1


def _cmd_encode(args, config: Config) -> int:
    from .encode import (
        EncodingParams,
        encode_index,
        encode_support,
        flatten_point,
        in_index_window,
        in_support_window,
        radix_encode,
    )
    from .errors import OutOfDomainError

    try:
        point = tuple(int(c) for c in args.point.replace(" ", "").split(","))
    except ValueError as exc:
        raise InputFormatError(f"--point {args.point!r} is not a comma-separated integer tuple") from exc
    if len(point) != args.d:
        raise InputFormatError(f"--point has {len(point)} coordinates, --d is {args.d}")
    params = EncodingParams(args.d, args.N)
    data = {
        "point": list(point),
        "radix_value": radix_encode(params, point),
        "in_support_window": in_support_window(params, point),
        "in_index_window": in_index_window(params, point),
    }
    if args.d >= 2:
        data["flatten_value"] = flatten_point(params, point)
    try:
        data["support_code"] = encode_support(params, point)
    except OutOfDomainError:
        data["support_code"] = None
    try:
        data["index_code"] = encode_index(params, point)
    except OutOfDomainError:
        data["index_code"] = None
    _emit(data)
    return 0


def _cmd_bundled(args, config: Config) -> int:
    filt = filters_mod.BUNDLED_FILTERS[args.name]()
    _emit(jsonio.filter_to_json(filt))
    return 0


_COMMANDS = {
    "snf": _cmd_snf,
    "basis": _cmd_basis,
    "reduce": _cmd_reduce,
    "verify": _cmd_verify,
    "transfer": _cmd_transfer,
    "cascade": _cmd_cascade,
    "quincunx": _cmd_quincunx,
    "encode": _cmd_encode,
    "bundled": _cmd_bundled,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = Config.from_file(args.config) if args.config else Config()
        return _COMMANDS[args.command](args, config)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LatwavError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
