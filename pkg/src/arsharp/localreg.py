"""Local constant and local linear estimation of an autoregression function.

Estimation works on the lagged pairs (z_{t-1}, z_t) of a series. Both
estimators are linear smoothers: the point estimate at z is ``w @ responses``
for an explicit weight vector ``w`` that sums to one. The weight vectors are
exposed directly because the sharpening and decomposition machinery re-uses
them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError

from .kernels import scaled_kernel
from .validation import check_bandwidth, check_grid, check_kind, check_series

# |S0*S2 - S1^2| below this (relative) tolerance is treated as a collinear
# local design, e.g. all in-window predictors identical.
DEGENERACY_RTOL = 1e-12


class DegeneracyError(ValueError):
    """Base class for numerically degenerate estimation problems."""


class NoLocalData(DegeneracyError):
    """All kernel weights vanish at the evaluation point."""


class DegenerateDesign(DegeneracyError):
    """The local weighted design is singular (or too close to it)."""


@dataclass
class CurveEstimate:
    """A curve of point estimates over a strictly increasing grid.

    ``values`` holds NaN wherever the estimate is undefined; ``defined``
    flags the same points explicitly. Undefined points are reported, never
    interpolated.
    """

    grid: np.ndarray
    values: np.ndarray
    defined: np.ndarray
    method: str = "raw"
    h: float | None = None
    kind: str | None = None
    kernel: str | None = None

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        self.defined = np.asarray(self.defined, dtype=bool)
        if not (self.grid.shape == self.values.shape == self.defined.shape):
            raise ValueError("grid, values and defined must have equal shapes")


def lag_pairs(series) -> tuple[np.ndarray, np.ndarray]:
    """Split a series into lagged (predictor, response) pairs.

    Returns ``(x, y)`` with ``x = z_1..z_{n-1}`` and ``y = z_2..z_n``.
    """
    z = check_series(series)
    return z[:-1].copy(), z[1:].copy()


def point_weights(x, z: float, kind: str, kernel: str, h: float) -> np.ndarray:
    """Linear smoother weights at a single evaluation point.

    The point estimate is ``point_weights(...) @ y``. Local constant weights
    are the normalized kernel values; local linear weights reproduce the
    intercept of the kernel-weighted least squares line through the pairs.

    Raises
    ------
    NoLocalData
        If every kernel weight is zero at ``z``.
    DegenerateDesign
        If the local linear design is singular at ``z``.
    """
    x = np.asarray(x, dtype=float)
    kind = check_kind(kind)
    h = check_bandwidth(h)
    z = float(z)
    if not np.isfinite(z):
        raise ValueError("evaluation point must be finite")

    k = scaled_kernel(kernel, h, x - z)
    s0 = k.sum()
    if s0 <= 0.0:
        raise NoLocalData(f"no kernel weight at z={z} (h={h}, kernel={kernel})")
    if kind == "lc":
        return k / s0
    d = x - z
    s1 = (k * d).sum()
    s2 = (k * d * d).sum()
    den = s0 * s2 - s1 * s1
    if abs(den) <= DEGENERACY_RTOL * max(1.0, abs(s0 * s2)):
        raise DegenerateDesign(f"singular local linear design at z={z}")
    return k * (s2 - d * s1) / den


def weight_matrix(
    x, points, kind: str, kernel: str, h: float
) -> tuple[np.ndarray, np.ndarray]:
    """Smoother weights for many evaluation points at once.

    Returns ``(W, defined)`` where row j of ``W`` contains the weights at
    ``points[j]`` (all zeros when undefined) and ``defined[j]`` says whether
    the point admits an estimate. Same conventions as :func:`point_weights`,
    with degeneracies flagged instead of raised.
    """
    x = np.asarray(x, dtype=float)
    points = np.asarray(points, dtype=float)
    kind = check_kind(kind)
    h = check_bandwidth(h)

    d = x[None, :] - points[:, None]
    k = scaled_kernel(kernel, h, d)
    s0 = k.sum(axis=1)
    if kind == "lc":
        defined = s0 > 0.0
        w = np.zeros_like(k)
        w[defined] = k[defined] / s0[defined, None]
        return w, defined
    s1 = (k * d).sum(axis=1)
    s2 = (k * d * d).sum(axis=1)
    den = s0 * s2 - s1 * s1
    defined = (s0 > 0.0) & (np.abs(den) > DEGENERACY_RTOL * np.maximum(1.0, np.abs(s0 * s2)))
    w = np.zeros_like(k)
    w[defined] = k[defined] * (s2[defined, None] - d[defined] * s1[defined, None])
    w[defined] /= den[defined, None]
    return w, defined


def estimate_point(x, y, z: float, kind: str, kernel: str, h: float) -> float:
    """Point estimate of the autoregression function at ``z``."""
    w = point_weights(x, z, kind, kernel, h)
    return float(w @ np.asarray(y, dtype=float))


def estimate_curve(
    series, grid, kind: str, kernel: str, h: float, method: str = "raw"
) -> CurveEstimate:
    """Curve of point estimates over a grid.

    Grid points where estimation is degenerate are flagged as undefined
    rather than failing the whole curve.
    """
    x, y = lag_pairs(series)
    grid = check_grid(grid)
    w, defined = weight_matrix(x, grid, kind, kernel, h)
    values = np.full(grid.shape, np.nan)
    values[defined] = w[defined] @ y
    return CurveEstimate(
        grid=grid, values=values, defined=defined,
        method=method, h=float(h), kind=check_kind(kind), kernel=kernel,
    )


class LocalAR(BaseEstimator, RegressorMixin):
    """Kernel-smoothed first-order autoregression estimator.

    Fits on a univariate series and predicts the conditional mean
    E[z_t | z_{t-1} = z] at arbitrary evaluation points.

    Parameters
    ----------
    kind : {"ll", "lc"}, default "ll"
        Local linear or local constant (Nadaraya-Watson) smoothing.
    h : float or "auto" or "auto-sharp", default "auto"
        Bandwidth. "auto" selects the rule-of-thumb plug-in value
        (local linear only); "auto-sharp" additionally inflates it by
        n**(4/45).
    kernel : {"epanechnikov", "gaussian", "uniform"}, default "epanechnikov"
    """

    def __init__(self, kind="ll", h="auto", kernel="epanechnikov"):
        self.kind = kind
        self.h = h
        self.kernel = kernel

    def _resolve_h(self, x, y):
        from .bandwidth import resolve_bandwidth

        return resolve_bandwidth(self.h, x, y, self.kernel, kind=check_kind(self.kind))

    def fit(self, z, y=None):
        """Store the lagged pairs of ``z`` and resolve the bandwidth."""
        series = check_series(z)
        self.series_ = series
        self.x_, self.y_ = lag_pairs(series)
        self.n_ = series.size
        self.h_ = self._resolve_h(self.x_, self.y_)
        return self

    def _check_fitted(self):
        if not hasattr(self, "x_"):
            raise NotFittedError("call fit() before using this estimator")

    def predict(self, points) -> np.ndarray:
        """Estimates at ``points``; NaN where the estimate is undefined."""
        self._check_fitted()
        points = np.asarray(points, dtype=float).ravel()
        w, defined = weight_matrix(self.x_, points, self.kind, self.kernel, self.h_)
        out = np.full(points.shape, np.nan)
        out[defined] = w[defined] @ self.y_
        return out

    def weights(self, z: float) -> np.ndarray:
        """Explicit smoother weight vector at a single point (sums to 1)."""
        self._check_fitted()
        return point_weights(self.x_, z, self.kind, self.kernel, self.h_)

    def estimate(self, grid=None, grid_n: int = 401) -> CurveEstimate:
        """Curve estimate over ``grid`` (default: 401 points spanning the data)."""
        self._check_fitted()
        from .validation import default_grid

        grid = default_grid(self.x_, grid_n) if grid is None else check_grid(grid)
        return estimate_curve(self.series_, grid, self.kind, self.kernel, self.h_)
