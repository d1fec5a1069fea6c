"""Bandwidth-ladder bias reduction for local linear autoregression.

Estimate g(z) with a ladder of bandwidths h_j, regress the estimates on
h_j^2 by ordinary least squares, and report the intercept: the
extrapolation of the estimate to h -> 0, which removes the O(h^2) bias
term. Applies to local linear estimation only.
"""

from __future__ import annotations

import numpy as np
from sklearn.exceptions import NotFittedError

from .localreg import CurveEstimate, LocalAR, lag_pairs, weight_matrix
from .validation import check_bandwidth, check_grid

DEFAULT_LADDER_SIZE = 11


def bandwidth_sequence(h: float, m: int = DEFAULT_LADDER_SIZE) -> np.ndarray:
    """Bandwidth ladder h_j = (1 + (j-1)/10) h for j = 1..m."""
    h = check_bandwidth(h)
    m = int(m)
    if m < 3:
        raise ValueError(f"ladder needs at least 3 bandwidths, got m={m}")
    return h * (1.0 + np.arange(m) / 10.0)


def fit_h2_regression(hs, ys) -> tuple[float, float]:
    """OLS fit of ys on hs**2 with intercept; returns (beta0, beta1)."""
    hs = np.asarray(hs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if hs.shape != ys.shape or hs.ndim != 1:
        raise ValueError("bandwidths and estimates must be equal-length vectors")
    x = hs * hs
    xc = x - x.mean()
    sxx = float(xc @ xc)
    if sxx <= 0.0 or np.unique(x).size < 2:
        raise ValueError("regressor h^2 is degenerate (needs >= 2 distinct values)")
    beta1 = float(xc @ ys) / sxx
    beta0 = float(ys.mean() - beta1 * x.mean())
    return beta0, beta1


def _ladder_intercepts(
    x: np.ndarray, y: np.ndarray, points: np.ndarray,
    base_h: float, kernel: str, m: int,
) -> tuple[np.ndarray, np.ndarray]:
    """h^2 -> 0 intercepts of the estimate ladder at each point.

    A point is undefined if any of its m local linear estimates is.
    """
    hs = bandwidth_sequence(base_h, m)
    estimates = np.empty((hs.size, points.size))
    defined = np.ones(points.size, dtype=bool)
    for j, hj in enumerate(hs):
        w, ok = weight_matrix(x, points, "ll", kernel, hj)
        defined &= ok
        estimates[j] = w @ y
    values = np.full(points.shape, np.nan)
    if defined.any():
        x2 = hs * hs
        xc = x2 - x2.mean()
        beta1 = (xc @ estimates[:, defined]) / float(xc @ xc)
        values[defined] = estimates[:, defined].mean(axis=0) - beta1 * x2.mean()
    return values, defined


def cheng_curve(
    series, grid, base_h: float, kernel: str, m: int = DEFAULT_LADDER_SIZE
) -> CurveEstimate:
    """Bias-reduced curve over a grid via the bandwidth ladder."""
    x, y = lag_pairs(series)
    grid = check_grid(grid)
    values, defined = _ladder_intercepts(x, y, grid, base_h, kernel, m)
    return CurveEstimate(
        grid=grid, values=values, defined=defined,
        method="cheng", h=float(base_h), kind="ll", kernel=kernel,
    )


class ChengAR(LocalAR):
    """Bandwidth-ladder bias-reduced local linear autoregression estimator.

    Parameters
    ----------
    h : float or "auto", default "auto"
        Base bandwidth of the ladder (unadjusted rule of thumb when "auto").
    m : int, default 11
        Ladder length.
    """

    def __init__(self, h="auto", kernel="epanechnikov", m=DEFAULT_LADDER_SIZE):
        super().__init__(kind="ll", h=h, kernel=kernel)
        self.m = m

    def fit(self, z, y=None):
        if int(self.m) < 3:
            raise ValueError(f"ladder needs at least 3 bandwidths, got m={self.m}")
        return super().fit(z)

    def predict(self, points) -> np.ndarray:
        if not hasattr(self, "x_"):
            raise NotFittedError("call fit() before using this estimator")
        points = np.asarray(points, dtype=float).ravel()
        values, _ = _ladder_intercepts(
            self.x_, self.y_, points, self.h_, self.kernel, int(self.m)
        )
        return values

    def estimate(self, grid=None, grid_n: int = 401) -> CurveEstimate:
        self._check_fitted()
        from .validation import default_grid

        grid = default_grid(self.x_, grid_n) if grid is None else check_grid(grid)
        return cheng_curve(self.series_, grid, self.h_, self.kernel, int(self.m))
