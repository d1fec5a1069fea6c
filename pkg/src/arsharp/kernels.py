"""Kernel weight functions and their bandwidth-scaled forms.

All kernels are symmetric probability densities. Evaluations outside a
bounded support are exactly 0.0 (no underflow noise), so weight sparsity
is exact for the compactly supported families.
"""

from __future__ import annotations

import numpy as np

EPANECHNIKOV = "epanechnikov"
GAUSSIAN = "gaussian"
UNIFORM = "uniform"

KERNELS = (EPANECHNIKOV, GAUSSIAN, UNIFORM)

_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)

# (roughness R(K) = integral of K^2, second moment mu2 = integral of u^2 K)
_CONSTANTS = {
    EPANECHNIKOV: (0.6, 0.2),
    GAUSSIAN: (0.5 / np.sqrt(np.pi), 1.0),
    UNIFORM: (0.5, 1.0 / 3.0),
}


def check_kernel(kernel: str) -> str:
    """Validate a kernel name, returning it lowercased."""
    name = str(kernel).lower()
    if name not in KERNELS:
        raise ValueError(f"unknown kernel {kernel!r}; choose from {KERNELS}")
    return name


def kernel_value(kernel: str, u):
    """Evaluate the base kernel K(u).

    Parameters
    ----------
    kernel : str
        One of ``"epanechnikov"``, ``"gaussian"``, ``"uniform"``.
    u : float or ndarray
        Evaluation point(s).

    Returns
    -------
    float or ndarray
        K(u), vectorized over ``u``.
    """
    name = check_kernel(kernel)
    u = np.asarray(u, dtype=float)
    if name == EPANECHNIKOV:
        out = np.where(np.abs(u) <= 1.0, 0.75 * (1.0 - u * u), 0.0)
    elif name == GAUSSIAN:
        out = np.exp(-0.5 * u * u) * _INV_SQRT_2PI
    else:
        out = np.where(np.abs(u) <= 1.0, 0.5, 0.0)
    return out if out.ndim else float(out)


def scaled_kernel(kernel: str, h: float, u):
    """Evaluate the bandwidth-scaled kernel K_h(u) = K(u / h) / h."""
    h = float(h)
    if not np.isfinite(h) or h <= 0.0:
        raise ValueError(f"bandwidth must be positive and finite, got {h!r}")
    out = kernel_value(kernel, np.asarray(u, dtype=float) / h) / h
    return out if np.ndim(out) else float(out)


def roughness(kernel: str) -> float:
    """Return R(K), the integral of K^2."""
    return _CONSTANTS[check_kernel(kernel)][0]


def second_moment(kernel: str) -> float:
    """Return mu2(K), the integral of u^2 K(u)."""
    return _CONSTANTS[check_kernel(kernel)][1]
