"""Data sharpening: residual-inflated responses re-smoothed on the original design.

One sharpening round: replace each response by z*_t = 2 z_t - ghat(z_{t-1})
(the response plus its own smoothing residual), then re-run the same linear
smoother with the original lagged predictors as design points.
"""

from __future__ import annotations

import numpy as np
from sklearn.exceptions import NotFittedError

from .localreg import CurveEstimate, LocalAR, lag_pairs, weight_matrix
from .validation import check_grid, check_kind

# Leave-in fitting: ghat(z_{t-1}) uses all pairs, including pair t itself.


def fitted_values(series, kind: str, kernel: str, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Smoother fit evaluated at each lagged predictor.

    Returns ``(fitted, defined)`` aligned with the responses: fitted[i] is
    the estimate at z_{t-1} for pair t = i + 2, NaN where degenerate.
    """
    x, y = lag_pairs(series)
    v, defined = weight_matrix(x, x, kind, kernel, h)
    fitted = np.full(x.shape, np.nan)
    fitted[defined] = v[defined] @ y
    return fitted, defined


def sharpen_responses(series, kind: str, kernel: str, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Sharpened responses z*_t = 2 z_t - ghat(z_{t-1}).

    Returns ``(zstar, defined)``; zstar is NaN wherever the fitted value is
    undefined.
    """
    _, y = lag_pairs(series)
    fitted, defined = fitted_values(series, kind, kernel, h)
    zstar = np.where(defined, 2.0 * y - fitted, np.nan)
    return zstar, defined


def _smooth_responses(
    x: np.ndarray, responses: np.ndarray, response_ok: np.ndarray,
    grid: np.ndarray, kind: str, kernel: str, h: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Smooth a response vector that may carry undefined entries.

    A grid point is undefined when its own weights are degenerate or when it
    puts nonzero weight on an undefined response.
    """
    w, defined = weight_matrix(x, grid, kind, kernel, h)
    bad = ~response_ok
    if bad.any():
        defined = defined & ~(w[:, bad] != 0.0).any(axis=1)
    values = np.full(grid.shape, np.nan)
    filled = np.where(response_ok, responses, 0.0)
    values[defined] = w[defined] @ filled
    return values, defined


def sharpened_curve(series, grid, kind: str, kernel: str, h: float) -> CurveEstimate:
    """Sharpened curve estimate over a grid.

    The sharpened values appear only as responses; the original lagged
    predictors remain the design points.
    """
    x, _ = lag_pairs(series)
    grid = check_grid(grid)
    zstar, ok = sharpen_responses(series, kind, kernel, h)
    values, defined = _smooth_responses(x, zstar, ok, grid, kind, kernel, h)
    return CurveEstimate(
        grid=grid, values=values, defined=defined,
        method="sharpened", h=float(h), kind=check_kind(kind), kernel=kernel,
    )


class SharpenedAR(LocalAR):
    """Data-sharpened kernel autoregression estimator.

    Same surface as :class:`LocalAR`; predictions smooth the sharpened
    responses instead of the raw ones.

    Parameters
    ----------
    adjust_h : {"none", "n45"}, default "none"
        With "n45" the resolved bandwidth is inflated by n**(4/45), the
        adjustment used with rule-of-thumb bandwidths in comparison studies.
    """

    def __init__(self, kind="ll", h="auto", kernel="epanechnikov", adjust_h="none"):
        super().__init__(kind=kind, h=h, kernel=kernel)
        self.adjust_h = adjust_h

    def fit(self, z, y=None):
        super().fit(z)
        if self.adjust_h not in ("none", "n45"):
            raise ValueError(f"adjust_h must be 'none' or 'n45', got {self.adjust_h!r}")
        if self.adjust_h == "n45":
            from .bandwidth import sharpen_adjust

            self.h_ = sharpen_adjust(self.h_, self.n_)
        self.zstar_, self.response_ok_ = sharpen_responses(
            self.series_, self.kind, self.kernel, self.h_
        )
        return self

    def predict(self, points) -> np.ndarray:
        if not hasattr(self, "zstar_"):
            raise NotFittedError("call fit() before using this estimator")
        points = np.asarray(points, dtype=float).ravel()
        values, _ = _smooth_responses(
            self.x_, self.zstar_, self.response_ok_, points,
            self.kind, self.kernel, self.h_,
        )
        return values

    def estimate(self, grid=None, grid_n: int = 401) -> CurveEstimate:
        self._check_fitted()
        from .validation import default_grid

        grid = default_grid(self.x_, grid_n) if grid is None else check_grid(grid)
        return sharpened_curve(self.series_, grid, self.kind, self.kernel, self.h_)
