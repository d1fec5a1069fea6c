"""Linear AR(p) fitting with intercept, residuals, and linear AR simulation.

Fitting is conditional least squares: OLS of z_t on (1, z_{t-1}, ..., z_{t-p})
for t = p+1..n, with noise variance RSS / (n - p - (p + 1)). These fits are
the null models for the bootstrap tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .localreg import DegenerateDesign
from .validation import check_series


@dataclass
class LinearARFit:
    """Coefficients of a fitted linear AR(p) model with intercept."""

    order: int
    coef: np.ndarray  # phi_1..phi_p
    intercept: float
    noise_variance: float
    n_used: int

    @property
    def mean(self) -> float:
        """Implied stationary mean, intercept / (1 - sum(phi))."""
        s = float(np.sum(self.coef))
        if abs(1.0 - s) < 1e-12:
            return np.nan
        return self.intercept / (1.0 - s)


def _design(z: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    y = z[p:]
    cols = [np.ones(y.size)] + [z[p - k : z.size - k] for k in range(1, p + 1)]
    return y, np.column_stack(cols)


def fit_ar(series, order: int) -> LinearARFit:
    """Conditional least squares fit of an AR(p) model with intercept."""
    p = int(order)
    if p < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    z = check_series(series, min_length=2 * p + 3)
    y, X = _design(z, p)
    beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < p + 1:
        raise DegenerateDesign(f"singular AR({p}) design (rank {rank} < {p + 1})")
    resid = y - X @ beta
    dof = z.size - p - (p + 1)
    return LinearARFit(
        order=p,
        coef=beta[1:].copy(),
        intercept=float(beta[0]),
        noise_variance=float(resid @ resid) / dof,
        n_used=int(y.size),
    )


def ar_residuals(fit: LinearARFit, series) -> np.ndarray:
    """Residuals e_t = z_t - c - sum_k phi_k z_{t-k} for t = p+1..n."""
    p = fit.order
    z = check_series(series, min_length=p + 2)
    y, X = _design(z, p)
    beta = np.concatenate([[fit.intercept], fit.coef])
    return y - X @ beta


def simulate_ar(
    fit: LinearARFit,
    n: int,
    rng: np.random.Generator,
    init=None,
    burn_in: int = 50,
) -> np.ndarray:
    """Simulate n values from a fitted linear AR(p) model.

    ``init`` seeds the recursion with the last p values of an observed
    series (oldest first); defaults to the implied stationary mean.
    """
    p = fit.order
    n = int(n)
    if n < 1:
        raise ValueError("need n >= 1")
    if fit.noise_variance < 0:
        raise ValueError("noise variance must be nonnegative")
    if init is None:
        m = fit.mean
        start = np.full(p, m if np.isfinite(m) else 0.0)
    else:
        start = np.asarray(init, dtype=float)
        if start.size != p:
            raise ValueError(f"init must supply exactly {p} values")
    sd = float(np.sqrt(fit.noise_variance))
    total = int(burn_in) + n
    eps = rng.standard_normal(total) if sd > 0 else np.zeros(total)
    buf = np.concatenate([start, np.empty(total)])
    phi_rev = fit.coef[::-1]  # align with buf[t-p:t]
    for t in range(p, p + total):
        buf[t] = fit.intercept + phi_rev @ buf[t - p : t] + sd * eps[t - p]
    return buf[p + int(burn_in):]


def sample_acf(series, max_lag: int = 10) -> np.ndarray:
    """Sample autocorrelations at lags 0..max_lag (no significance testing)."""
    z = check_series(series)
    zc = z - z.mean()
    denom = float(zc @ zc)
    if denom <= 0.0:
        raise DegenerateDesign("constant series has no autocorrelation")
    max_lag = min(int(max_lag), z.size - 1)
    return np.array([float(zc[k:] @ zc[: z.size - k]) / denom for k in range(max_lag + 1)])


class LinearAR(BaseEstimator):
    """Linear AR(p) model with intercept, fitted by conditional least squares.

    Fitted attributes: ``coef_``, ``intercept_``, ``noise_variance_``,
    ``mean_``, ``n_used_``.
    """

    def __init__(self, order=1):
        self.order = order

    def fit(self, z, y=None):
        self.fit_ = fit_ar(z, self.order)
        self.series_ = check_series(z)
        self.coef_ = self.fit_.coef
        self.intercept_ = self.fit_.intercept
        self.noise_variance_ = self.fit_.noise_variance
        self.mean_ = self.fit_.mean
        self.n_used_ = self.fit_.n_used
        return self

    def _check_fitted(self):
        if not hasattr(self, "fit_"):
            raise NotFittedError("call fit() before using this estimator")

    def residuals(self, z=None) -> np.ndarray:
        """Residuals on ``z`` (defaults to the training series)."""
        self._check_fitted()
        return ar_residuals(self.fit_, self.series_ if z is None else z)

    def simulate(self, n: int, rng: np.random.Generator, init="observed",
                 burn_in: int = 50) -> np.ndarray:
        """Simulate from the fitted model.

        ``init="observed"`` starts from the last p observed values, the
        convention used for the bootstrap null replicates.
        """
        self._check_fitted()
        if isinstance(init, str) and init == "observed":
            init = self.series_[-self.fit_.order:]
        return simulate_ar(self.fit_, n, rng, init=init, burn_in=burn_in)
