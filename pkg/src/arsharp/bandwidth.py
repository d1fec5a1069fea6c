"""Data-driven bandwidth selection and the sharpening inflation factor.

The rule of thumb is the standard local-linear plug-in: fit a global quartic
pilot polynomial by least squares, estimate the noise variance from its
residuals, and balance squared bias against variance,

    h = [ R(K) * sigma2 * (x_max - x_min) / (mu2(K)^2 * sum_i m''(x_i)^2) ]^(1/5).

Exact numeric agreement with any particular external implementation is not a
goal; internal consistency is.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .kernels import roughness, second_moment
from .localreg import DegenerateDesign
from .validation import check_bandwidth

PILOT_DEGREE = 4  # quartic pilot: local linear convention p + 3


@dataclass
class RotBandwidth:
    """Rule-of-thumb bandwidth plus its pilot-fit diagnostics."""

    h: float
    sigma2: float
    curvature_sum: float
    fallback: bool = False


def rule_of_thumb(x, y, kernel: str = "epanechnikov") -> RotBandwidth:
    """Plug-in bandwidth for local linear smoothing of (x, y) pairs.

    Falls back to h = range/4 (flagged) when the pilot fit has zero
    curvature at noise scale, or zero residual variance.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.size
    if n < PILOT_DEGREE + 2:
        raise ValueError(f"rule of thumb needs at least {PILOT_DEGREE + 2} pairs, got {n}")
    rng_x = float(np.max(x) - np.min(x))
    if rng_x <= 0.0:
        raise DegenerateDesign("all predictors identical; no bandwidth scale")

    pilot = Polynomial.fit(x, y, PILOT_DEGREE)
    resid = y - pilot(x)
    sigma2 = float(resid @ resid) / (n - (PILOT_DEGREE + 1))
    curv = pilot.deriv(2)(x)
    curvature_sum = float(curv @ curv)

    sd_y = float(np.std(y))
    curv_floor = 1e-10 * n * (sd_y / rng_x**2) ** 2
    if curvature_sum <= curv_floor or sigma2 <= 0.0:
        return RotBandwidth(h=rng_x / 4.0, sigma2=sigma2,
                            curvature_sum=curvature_sum, fallback=True)

    rk, mu2 = roughness(kernel), second_moment(kernel)
    h = (rk * sigma2 * rng_x / (mu2**2 * curvature_sum)) ** 0.2
    return RotBandwidth(h=h, sigma2=sigma2, curvature_sum=curvature_sum)


def sharpen_adjust(h: float, n: int) -> float:
    """Inflate a bandwidth by n**(4/45) for sharpened estimation."""
    h = check_bandwidth(h)
    n = int(n)
    if n < 1:
        raise ValueError(f"sample size must be positive, got {n}")
    return h * n ** (4.0 / 45.0)


def fixed_bandwidth_preset(n: int) -> float:
    """Fixed study bandwidths: 0.3, 0.25, 0.2 for n = 50, 100, 200."""
    presets = {50: 0.3, 100: 0.25, 200: 0.2}
    n = int(n)
    if n not in presets:
        raise ValueError(f"no fixed bandwidth preset for n={n}; supported: {sorted(presets)}")
    return presets[n]


def resolve_bandwidth(h, x, y, kernel: str, kind: str = "ll") -> float:
    """Resolve a bandwidth spec: a number, "auto", or "auto-sharp".

    "auto" runs the rule of thumb on the pairs; "auto-sharp" then inflates
    by n**(4/45) with n = series length. Automatic selection is defined for
    local linear estimation only.
    """
    if isinstance(h, str):
        spec = h.lower()
        if spec not in ("auto", "auto-sharp"):
            raise ValueError(f"bandwidth spec must be a number, 'auto' or 'auto-sharp', got {h!r}")
        if kind != "ll":
            raise ValueError("automatic bandwidth selection is available for kind='ll' only")
        value = rule_of_thumb(x, y, kernel).h
        if spec == "auto-sharp":
            value = sharpen_adjust(value, len(np.asarray(x)) + 1)
        return value
    return check_bandwidth(h)
