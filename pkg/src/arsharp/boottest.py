"""Pointwise bootstrap null bands for nonlinearity testing.

Direct mode fits a linear AR(1) to the observed series, simulates B series
from that null, estimates the autoregression curve on each, and takes
pointwise empirical quantiles. Residual mode fits AR(p), simulates from the
fit, refits AR(p) per replicate, and estimates the curve on the refit
residuals, whose true autoregression function is identically zero under the
null.

Quantiles use the order statistic with (1-based) index ceil(q * m), where m
counts the replicates defined at that grid point. Grid points defined in
fewer than 95% of replicates are flagged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._parallel import map_indexed
from .arfit import ar_residuals, fit_ar, simulate_ar
from .bandwidth import resolve_bandwidth, sharpen_adjust
from .cheng import DEFAULT_LADDER_SIZE, _ladder_intercepts
from .localreg import CurveEstimate, DegeneracyError, lag_pairs, weight_matrix
from .sharpen import _smooth_responses
from .simulate import replicate_stream
from .validation import check_grid, check_kind, check_method, check_series

MIN_DEFINED_FRACTION = 0.95
BOOT_BURN_IN = 50


@dataclass
class TestBands:
    """Pointwise bootstrap quantile envelope of null curve estimates."""

    __test__ = False  # not a pytest class, despite the name

    grid: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    method: str
    mode: str  # "direct" | "residual"
    B: int
    defined_count: np.ndarray

    def well_defined(self) -> np.ndarray:
        return self.defined_count >= MIN_DEFINED_FRACTION * self.B


@dataclass
class ExceedanceReport:
    """Where an observed curve exits the band envelope.

    ``regions`` lists maximal grid intervals (z_start, z_end) of exit points;
    ``fraction_outside`` is the share of comparable grid points outside.
    """

    regions: list[tuple[float, float]]
    fraction_outside: float


def empirical_quantile(values: np.ndarray, q: float) -> float:
    """Order statistic with 1-based index ceil(q * m)."""
    v = np.sort(np.asarray(values, dtype=float))
    m = v.size
    if m == 0:
        raise ValueError("no values to take a quantile of")
    idx = max(int(np.ceil(q * m)), 1)
    return float(v[min(idx, m) - 1])


def method_curve(
    series, grid, method: str, kind: str, kernel: str, h, cheng_m: int = DEFAULT_LADDER_SIZE,
    adjust_h: str = "none",
) -> tuple[np.ndarray, np.ndarray]:
    """(values, defined) of one estimation method on one series.

    ``h`` may be a number or "auto"/"auto-sharp"; automatic bandwidths are
    re-selected from the given series, which is what makes this reusable on
    bootstrap replicates. ``adjust_h="n45"`` inflates the sharpened
    bandwidth by n**(4/45).
    """
    method = check_method(method)
    kind = check_kind(kind)
    x, y = lag_pairs(series)
    h_val = resolve_bandwidth(h, x, y, kernel, kind=kind)
    if method == "raw":
        w, ok = weight_matrix(x, grid, kind, kernel, h_val)
        values = np.full(grid.shape, np.nan)
        values[ok] = w[ok] @ y
        return values, ok
    if method == "sharpened":
        if adjust_h == "n45":
            h_val = sharpen_adjust(h_val, len(series))
        v, ok_v = weight_matrix(x, x, kind, kernel, h_val)
        fitted = np.where(ok_v, v @ y, np.nan)
        zstar = 2.0 * y - fitted
        return _smooth_responses(x, zstar, ok_v, grid, kind, kernel, h_val)
    if kind != "ll":
        raise ValueError("the bandwidth-ladder method is defined for kind='ll' only")
    return _ladder_intercepts(x, y, grid, h_val, kernel, cheng_m)


def _pointwise_bands(curves: np.ndarray, defined: np.ndarray,
                     lo_q: float = 0.025, hi_q: float = 0.975):
    """Pointwise quantiles over a (B, n_grid) stack with per-point masks."""
    n_grid = curves.shape[1]
    lower = np.full(n_grid, np.nan)
    upper = np.full(n_grid, np.nan)
    counts = defined.sum(axis=0)
    for j in range(n_grid):
        vals = curves[defined[:, j], j]
        if vals.size:
            lower[j] = empirical_quantile(vals, lo_q)
            upper[j] = empirical_quantile(vals, hi_q)
    return lower, upper, counts.astype(int)


def direct_bands(
    series, grid=None, method: str = "raw", kind: str = "ll",
    kernel: str = "epanechnikov", h="auto", B: int = 500, seed: int = 0,
    grid_n: int = 401, cheng_m: int = DEFAULT_LADDER_SIZE, adjust_h: str = "none",
    threads: int = 1,
) -> TestBands:
    """Bands from a fitted linear AR(1) null applied to the series itself."""
    z = check_series(series)
    x, _ = lag_pairs(z)
    if grid is None:
        from .validation import default_grid

        grid = default_grid(x, grid_n)
    grid = check_grid(grid)
    fit = fit_ar(z, 1)
    B = int(B)
    if B < 1:
        raise ValueError("need B >= 1")

    def one(b: int):
        rng = replicate_stream(seed, b)
        zb = simulate_ar(fit, z.size, rng, init=z[-1:], burn_in=BOOT_BURN_IN)
        try:
            return method_curve(zb, grid, method, kind, kernel, h, cheng_m, adjust_h)
        except DegeneracyError:
            # a degenerate replicate contributes nothing; the defined counts
            # surface how often this happened
            return np.zeros(grid.shape), np.zeros(grid.shape, dtype=bool)

    results = map_indexed(one, B, threads)
    curves = np.stack([np.where(ok, v, 0.0) for v, ok in results])
    defined = np.stack([ok for _, ok in results])
    lower, upper, counts = _pointwise_bands(curves, defined)
    return TestBands(grid=grid, lower=lower, upper=upper, method=check_method(method),
                     mode="direct", B=B, defined_count=counts)


def residual_bands(
    series, order: int, grid=None, method: str = "raw", kind: str = "ll",
    kernel: str = "epanechnikov", h="auto", B: int = 500, seed: int = 0,
    grid_n: int = 401, cheng_m: int = DEFAULT_LADDER_SIZE, adjust_h: str = "none",
    threads: int = 1,
) -> TestBands:
    """Bands for AR(p) residual curves under the fitted linear null.

    Per replicate: simulate from the fit, refit AR(p) on the simulated
    series, and estimate the autoregression curve of the refit residuals
    (true curve identically zero under the null).
    """
    z = check_series(series)
    fit = fit_ar(z, order)
    resid = ar_residuals(fit, z)
    if grid is None:
        from .validation import default_grid

        grid = default_grid(resid[:-1], grid_n)
    grid = check_grid(grid)
    B = int(B)
    if B < 1:
        raise ValueError("need B >= 1")

    def one(b: int):
        rng = replicate_stream(seed, b)
        zb = simulate_ar(fit, z.size, rng, init=z[-fit.order:], burn_in=BOOT_BURN_IN)
        try:
            refit = fit_ar(zb, fit.order)
            eb = ar_residuals(refit, zb)
            return method_curve(eb, grid, method, kind, kernel, h, cheng_m, adjust_h)
        except DegeneracyError:
            return np.zeros(grid.shape), np.zeros(grid.shape, dtype=bool)

    results = map_indexed(one, B, threads)
    curves = np.stack([np.where(ok, v, 0.0) for v, ok in results])
    defined = np.stack([ok for _, ok in results])
    lower, upper, counts = _pointwise_bands(curves, defined)
    return TestBands(grid=grid, lower=lower, upper=upper, method=check_method(method),
                     mode="residual", B=B, defined_count=counts)


def observed_residual_curve(
    series, order: int, grid, method: str = "raw", kind: str = "ll",
    kernel: str = "epanechnikov", h="auto", cheng_m: int = DEFAULT_LADDER_SIZE,
    adjust_h: str = "none",
) -> CurveEstimate:
    """Curve estimate on the observed AR(p) residuals (the tested curve)."""
    fit = fit_ar(series, order)
    resid = ar_residuals(fit, series)
    grid = check_grid(grid)
    values, ok = method_curve(resid, grid, method, kind, kernel, h, cheng_m, adjust_h)
    return CurveEstimate(grid=grid, values=np.where(ok, values, np.nan), defined=ok,
                         method=check_method(method), kind=check_kind(kind), kernel=kernel)


def exceedance(observed: CurveEstimate, bands: TestBands) -> ExceedanceReport:
    """Maximal grid intervals where the observed curve exits the bands."""
    if observed.grid.shape != bands.grid.shape or not np.array_equal(observed.grid, bands.grid):
        raise ValueError("observed curve and bands must share the same grid")
    comparable = observed.defined & np.isfinite(bands.lower) & np.isfinite(bands.upper)
    outside = comparable & (
        (observed.values < bands.lower) | (observed.values > bands.upper)
    )
    regions: list[tuple[float, float]] = []
    start = None
    for j, flag in enumerate(outside):
        if flag and start is None:
            start = j
        elif not flag and start is not None:
            regions.append((float(bands.grid[start]), float(bands.grid[j - 1])))
            start = None
    if start is not None:
        regions.append((float(bands.grid[start]), float(bands.grid[-1])))
    total = int(comparable.sum())
    fraction = float(outside.sum()) / total if total else 0.0
    return ExceedanceReport(regions=regions, fraction_outside=fraction)
