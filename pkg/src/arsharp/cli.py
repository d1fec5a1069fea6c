"""Command line front end.

Subcommands: estimate, sharpen, cheng, arfit, simulate, bias-study,
boot-test, datasets. Exit codes: 0 success, 2 usage error, 3 data error,
4 numerical degeneracy.

Every randomized subcommand is seeded (default seed 0, never wall clock),
and every run with ``--out`` writes a ``<out>.manifest.json`` sufficient to
reproduce the output byte-for-byte.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .arfit import fit_ar, sample_acf
from .bandwidth import resolve_bandwidth
from .biasstudy import PRESET_NAMES, decomposition_study, run_study, study_presets
from .boottest import direct_bands, exceedance, method_curve, observed_residual_curve, residual_bands
from .cheng import cheng_curve
from .dataio import (
    DataError,
    file_checksum,
    fmt,
    read_series,
    write_bands_csv,
    write_curve_csv,
    write_manifest,
    write_series_csv,
    write_study_csv,
)
from .datasets import bundled_dataset, dataset_checksum, dataset_names
from .localreg import CurveEstimate, DegeneracyError, estimate_curve, lag_pairs
from .sharpen import sharpened_curve
from .simulate import SimulationConfig, replicate_stream, simulate_path
from .validation import default_grid

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_DEGENERATE = 4


def _bandwidth_spec(value: str):
    if value in ("auto", "auto-sharp"):
        return value
    try:
        return float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"bandwidth must be a number, 'auto' or 'auto-sharp', got {value!r}"
        )


def _io_parent(transform: bool = True) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="CSV file with one value per row")
    src.add_argument("--dataset", choices=dataset_names(), help="bundled dataset name")
    p.add_argument("--column", default=None, help="CSV column name or 0-based index")
    if transform:
        p.add_argument("--transform", choices=("none", "sqrt"), default="none")
    return p


def _common_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--kernel", choices=("epanechnikov", "gaussian", "uniform"),
                   default="epanechnikov")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output CSV path")
    p.add_argument("--threads", type=int, default=1)
    return p


def _grid_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--grid-min", type=float, default=None)
    p.add_argument("--grid-max", type=float, default=None)
    p.add_argument("--grid-n", type=int, default=401)
    return p


def _load_series(args) -> tuple[np.ndarray, str | None]:
    """Resolve --input/--dataset (+ --transform) into (series, checksum)."""
    if args.dataset:
        ds = bundled_dataset(args.dataset)
        series, checksum = ds.values, dataset_checksum(args.dataset)
    else:
        series, checksum = read_series(args.input, args.column), file_checksum(args.input)
    if getattr(args, "transform", "none") == "sqrt":
        if np.any(series < 0):
            raise DataError("sqrt transform requires nonnegative values")
        series = np.sqrt(series)
    return series, checksum


def _resolve_grid(args, x: np.ndarray) -> np.ndarray:
    if args.grid_min is not None or args.grid_max is not None:
        lo = args.grid_min if args.grid_min is not None else float(np.min(x))
        hi = args.grid_max if args.grid_max is not None else float(np.max(x))
        if not hi > lo:
            raise DataError(f"empty grid range [{lo}, {hi}]")
        return np.linspace(lo, hi, args.grid_n)
    return default_grid(x, args.grid_n)


def _emit_curve(curve: CurveEstimate, args, parser_name: str, argv, checksum) -> None:
    if args.out:
        write_curve_csv(args.out, curve)
        write_manifest(args.out, parser_name, argv, args.seed, checksum)
    else:
        print("z,ghat,defined")
        for z, v, d in zip(curve.grid, curve.values, curve.defined):
            print(f"{fmt(z)},{fmt(v)},{1 if d else 0}")


def _cmd_estimate(args, argv) -> int:
    series, checksum = _load_series(args)
    x, y = lag_pairs(series)
    h = resolve_bandwidth(args.h, x, y, args.kernel, kind=args.kind)
    grid = _resolve_grid(args, x)
    curve = estimate_curve(series, grid, args.kind, args.kernel, h)
    _emit_curve(curve, args, "estimate", argv, checksum)
    return EXIT_OK


def _cmd_sharpen(args, argv) -> int:
    series, checksum = _load_series(args)
    x, y = lag_pairs(series)
    h = resolve_bandwidth(args.h, x, y, args.kernel, kind=args.kind)
    if args.adjust_h == "n45":
        from .bandwidth import sharpen_adjust

        h = sharpen_adjust(h, series.size)
    grid = _resolve_grid(args, x)
    curve = sharpened_curve(series, grid, args.kind, args.kernel, h)
    _emit_curve(curve, args, "sharpen", argv, checksum)
    return EXIT_OK


def _cmd_cheng(args, argv) -> int:
    series, checksum = _load_series(args)
    x, y = lag_pairs(series)
    h = resolve_bandwidth(args.h, x, y, args.kernel, kind="ll")
    grid = _resolve_grid(args, x)
    curve = cheng_curve(series, grid, h, args.kernel, args.m)
    _emit_curve(curve, args, "cheng", argv, checksum)
    return EXIT_OK


def _cmd_arfit(args, argv) -> int:
    series, checksum = _load_series(args)
    fit = fit_ar(series, args.order)
    acf = sample_acf(series, 10)
    print(f"AR({fit.order}) conditional least squares fit on {fit.n_used} rows")
    print(f"  intercept       {fit.intercept:.6g}")
    for k, phi in enumerate(fit.coef, start=1):
        print(f"  phi_{k}           {phi:.6g}")
    print(f"  noise variance  {fit.noise_variance:.6g}")
    print(f"  implied mean    {fit.mean:.6g}")
    print("  sample acf (lags 1..10): " + " ".join(f"{v:.3f}" for v in acf[1:]))
    if args.out:
        rows = [["intercept", fmt(fit.intercept)]]
        rows += [[f"phi_{k}", fmt(p)] for k, p in enumerate(fit.coef, start=1)]
        rows += [
            ["noise_variance", fmt(fit.noise_variance)],
            ["mean", fmt(fit.mean)],
            ["n_used", str(fit.n_used)],
        ]
        from .dataio import _write_rows

        _write_rows(args.out, ["term", "value"], rows)
        write_manifest(args.out, "arfit", argv, args.seed, checksum)
    return EXIT_OK


def _cmd_simulate(args, argv) -> int:
    config = SimulationConfig(g=args.g, sigma=args.sigma, n=args.n,
                              burn_in=args.burn_in, z0=args.z0, seed=args.seed)
    path = simulate_path(config, replicate_stream(args.seed, 0))
    if args.out:
        write_series_csv(args.out, path)
        write_manifest(args.out, "simulate", argv, args.seed, None)
    else:
        for v in path:
            print(fmt(v))
    return EXIT_OK


def _cmd_bias_study(args, argv) -> int:
    config = study_presets(args.preset, n=args.n, replicates=args.replicates,
                           seed=args.seed, kind=args.kind, grid_n=args.grid_n)
    config.kernel = args.kernel
    study = run_study(config, threads=args.threads)
    decomp = None
    if args.preset.startswith("decomp"):
        decomp = decomposition_study(config, threads=args.threads)
    if args.out:
        write_study_csv(args.out, study, decomp)
        write_manifest(args.out, "bias-study", argv, args.seed, None)
    else:
        for method, curves in study.curves.items():
            mean_abs_bias = float(np.nanmean(np.abs(curves.bias)))
            mean_mae = float(np.nanmean(curves.mae))
            print(f"{method}: mean |bias| = {mean_abs_bias:.6g}, mean MAE = {mean_mae:.6g}")
    return EXIT_OK


def _cmd_boot_test(args, argv) -> int:
    series, checksum = _load_series(args)
    kw = dict(method=args.method, kind=args.kind, kernel=args.kernel, h=args.h,
              B=args.B, seed=args.seed, cheng_m=args.m, adjust_h=args.adjust_h,
              threads=args.threads)
    if args.mode == "direct":
        x, _ = lag_pairs(series)
        grid = _resolve_grid(args, x)
        bands = direct_bands(series, grid, **kw)
        values, ok = method_curve(series, grid, args.method, args.kind, args.kernel,
                                  args.h, args.m, args.adjust_h)
        observed = CurveEstimate(grid=grid, values=np.where(ok, values, np.nan),
                                 defined=ok, method=args.method)
    else:
        fit = fit_ar(series, args.order)
        from .arfit import ar_residuals

        resid = ar_residuals(fit, series)
        grid = _resolve_grid(args, resid[:-1])
        bands = residual_bands(series, args.order, grid, **kw)
        observed = observed_residual_curve(series, args.order, grid, args.method,
                                           args.kind, args.kernel, args.h, args.m,
                                           args.adjust_h)
    report = exceedance(observed, bands)
    print(f"fraction outside bands: {report.fraction_outside:.4f}")
    for lo, hi in report.regions:
        print(f"  exits band on [{lo:.6g}, {hi:.6g}]")
    if args.out:
        write_bands_csv(args.out, observed, bands)
        write_manifest(args.out, "boot-test", argv, args.seed, checksum)
    return EXIT_OK


def _cmd_datasets(args, argv) -> int:
    if args.name is None:
        for name in dataset_names():
            ds = bundled_dataset(name)
            print(f"{name}: n={ds.values.size}, years {ds.years[0]}-{ds.years[-1]}")
            print(f"  {ds.provenance}")
        return EXIT_OK
    ds = bundled_dataset(args.name)
    if args.out:
        from .dataio import _write_rows

        _write_rows(args.out, ["year", "value"],
                    ([str(int(y)), fmt(v)] for y, v in zip(ds.years, ds.values)))
        write_manifest(args.out, "datasets", argv, None, dataset_checksum(args.name))
    else:
        print("year,value")
        for y, v in zip(ds.years, ds.values):
            print(f"{int(y)},{fmt(v)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arsharp",
        description="Nonparametric first-order autoregression estimation "
                    "with bias-reduced variants, simulation studies, and "
                    "bootstrap nonlinearity tests.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    io, common, grid = _io_parent(), _common_parent(), _grid_parent()

    p = sub.add_parser("estimate", parents=[io, common, grid],
                       help="kernel autoregression curve estimate")
    p.add_argument("--kind", choices=("lc", "ll"), default="ll")
    p.add_argument("--h", type=_bandwidth_spec, default="auto")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("sharpen", parents=[io, common, grid],
                       help="data-sharpened curve estimate")
    p.add_argument("--kind", choices=("lc", "ll"), default="ll")
    p.add_argument("--h", type=_bandwidth_spec, default="auto")
    p.add_argument("--adjust-h", choices=("none", "n45"), default="none",
                   help="inflate the bandwidth by n**(4/45)")
    p.set_defaults(func=_cmd_sharpen)

    p = sub.add_parser("cheng", parents=[io, common, grid],
                       help="bandwidth-ladder bias-reduced curve estimate")
    p.add_argument("--h", type=_bandwidth_spec, default="auto")
    p.add_argument("--m", type=int, default=11, help="ladder length")
    p.set_defaults(func=_cmd_cheng)

    p = sub.add_parser("arfit", parents=[io, common],
                       help="linear AR(p) fit by conditional least squares")
    p.add_argument("--order", type=int, default=1)
    p.set_defaults(func=_cmd_arfit)

    p = sub.add_parser("simulate", parents=[common],
                       help="simulate the nonlinear AR(1) model")
    p.add_argument("--g", default="xsin",
                   help="autoregression function: cos|xcos|sin|xsin|zero|linear:a,b")
    p.add_argument("--sigma", type=float, default=0.5)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--burn-in", type=int, default=100)
    p.add_argument("--z0", type=float, default=0.0)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("bias-study", parents=[common],
                       help="Monte Carlo bias / absolute error study")
    p.add_argument("--preset", required=True, choices=PRESET_NAMES)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--replicates", type=int, default=500)
    p.add_argument("--kind", choices=("lc", "ll"), default=None)
    p.add_argument("--grid-n", type=int, default=101)
    p.set_defaults(func=_cmd_bias_study)

    p = sub.add_parser("boot-test", parents=[io, common, grid],
                       help="bootstrap nonlinearity test bands")
    p.add_argument("--mode", choices=("direct", "residual"), default="direct")
    p.add_argument("--order", type=int, default=2,
                   help="AR order for residual mode")
    p.add_argument("--method", choices=("raw", "sharp", "cheng"), default="raw")
    p.add_argument("--kind", choices=("lc", "ll"), default="ll")
    p.add_argument("--h", type=_bandwidth_spec, default="auto")
    p.add_argument("--adjust-h", choices=("none", "n45"), default="none")
    p.add_argument("--B", type=int, default=500)
    p.add_argument("--m", type=int, default=11)
    p.set_defaults(func=_cmd_boot_test)

    p = sub.add_parser("datasets", parents=[common],
                       help="list or export the bundled datasets")
    p.add_argument("--name", choices=dataset_names(), default=None)
    p.set_defaults(func=_cmd_datasets)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args, argv)
    except DegeneracyError as exc:
        print(f"error: numerical degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
