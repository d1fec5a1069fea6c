"""Input validation helpers shared by the estimators and study drivers."""

from __future__ import annotations

import numpy as np

KINDS = ("lc", "ll")
METHODS = ("raw", "sharpened", "cheng")

_METHOD_ALIASES = {"sharp": "sharpened", "nw": "lc", "locallinear": "ll"}


def check_series(z, min_length: int = 3) -> np.ndarray:
    """Coerce a time series to a finite 1-d float array of length >= min_length."""
    z = np.asarray(z, dtype=float)
    if z.ndim == 2 and z.shape[1] == 1:
        z = z[:, 0]
    if z.ndim != 1:
        raise ValueError(f"series must be one-dimensional, got shape {z.shape}")
    if z.size < min_length:
        raise ValueError(f"series needs at least {min_length} values, got {z.size}")
    if not np.all(np.isfinite(z)):
        raise ValueError("series contains non-finite values")
    return z


def check_grid(grid) -> np.ndarray:
    """Coerce an evaluation grid to a nonempty, strictly increasing float array."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a nonempty one-dimensional array")
    if not np.all(np.isfinite(grid)):
        raise ValueError("grid contains non-finite values")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("grid must be strictly increasing")
    return grid


def check_bandwidth(h) -> float:
    h = float(h)
    if not np.isfinite(h) or h <= 0.0:
        raise ValueError(f"bandwidth must be positive and finite, got {h!r}")
    return h


def check_kind(kind: str) -> str:
    name = _METHOD_ALIASES.get(str(kind).lower(), str(kind).lower())
    if name not in KINDS:
        raise ValueError(f"estimator kind must be one of {KINDS}, got {kind!r}")
    return name


def check_method(method: str) -> str:
    name = _METHOD_ALIASES.get(str(method).lower(), str(method).lower())
    if name not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    return name


def default_grid(x: np.ndarray, n_points: int = 401) -> np.ndarray:
    """Equally spaced grid spanning the range of the design points."""
    if n_points < 1:
        raise ValueError("grid needs at least one point")
    lo, hi = float(np.min(x)), float(np.max(x))
    if n_points == 1:
        return np.array([0.5 * (lo + hi)])
    return np.linspace(lo, hi, n_points)
