"""Path generation for the nonlinear AR(1) model z_t = g(z_{t-1}) + sigma * eps_t.

Noise is standard normal with a constant scale. Randomness is organized as
one independent, reproducible stream per replicate index so that Monte Carlo
studies are deterministic regardless of scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

TRUE_FUNCTIONS: dict[str, Callable] = {
    "cos": np.cos,
    "sin": np.sin,
    "xcos": lambda x: x * np.cos(x),
    "xsin": lambda x: x * np.sin(x),
    "zero": lambda x: np.zeros_like(np.asarray(x, dtype=float)) + 0.0,
}


def linear_function(a: float, b: float) -> Callable:
    """The affine autoregression function x -> a + b*x."""
    a, b = float(a), float(b)
    if not (np.isfinite(a) and np.isfinite(b)):
        raise ValueError("linear coefficients must be finite")
    return lambda x: a + b * np.asarray(x, dtype=float)


def true_function(g: Union[str, Callable]) -> Callable:
    """Resolve an autoregression function spec.

    Accepts a callable (returned unchanged) or one of the names
    ``cos``, ``xcos``, ``sin``, ``xsin``, ``zero``, ``linear:a,b``.
    """
    if callable(g):
        return g
    name = str(g).lower()
    if name in TRUE_FUNCTIONS:
        return TRUE_FUNCTIONS[name]
    if name.startswith("linear:"):
        parts = name.split(":", 1)[1].split(",")
        if len(parts) != 2:
            raise ValueError(f"linear spec must look like 'linear:a,b', got {g!r}")
        return linear_function(float(parts[0]), float(parts[1]))
    raise ValueError(
        f"unknown autoregression function {g!r}; "
        f"choose from {sorted(TRUE_FUNCTIONS)} or 'linear:a,b'"
    )


@dataclass
class SimulationConfig:
    """Design of one simulated path.

    ``g`` may be a name (kept serializable for run manifests) or a callable.
    """

    g: Union[str, Callable] = "xsin"
    sigma: float = 0.5
    n: int = 100
    burn_in: int = 100
    z0: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not np.isfinite(self.sigma) or self.sigma <= 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")
        if int(self.n) < 3:
            raise ValueError(f"need n >= 3, got {self.n}")
        if int(self.burn_in) < 0:
            raise ValueError("burn_in must be nonnegative")


def replicate_stream(seed: int, index: int) -> np.random.Generator:
    """Independent, reproducible random stream for one replicate.

    Streams for distinct indices are statistically independent; the same
    (seed, index) always yields the same stream, regardless of how many
    other streams exist or in which order they are consumed.
    """
    if int(index) < 0:
        raise ValueError("replicate index must be nonnegative")
    return np.random.default_rng(
        np.random.SeedSequence(entropy=int(seed) & (2**64 - 1), spawn_key=(int(index),))
    )


def simulate_path_with_noise(
    config: SimulationConfig, rng: np.random.Generator | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Simulate a path and return the noise that drives its retained transitions.

    Returns ``(z, eps)`` with ``len(z) == n`` and ``len(eps) == n - 1``,
    aligned so that ``z[i+1] = g(z[i]) + sigma * eps[i]`` for the retained
    sample.
    """
    if rng is None:
        rng = replicate_stream(config.seed, 0)
    g = true_function(config.g)
    n, burn = int(config.n), int(config.burn_in)
    total = burn + n
    eps = rng.standard_normal(total)
    z = np.empty(total + 1)
    z[0] = float(config.z0)
    sigma = float(config.sigma)
    for t in range(total):
        z[t + 1] = g(z[t]) + sigma * eps[t]
    path = z[burn + 1:]
    return path, eps[burn + 1:]


def simulate_path(
    config: SimulationConfig, rng: np.random.Generator | None = None
) -> np.ndarray:
    """Simulate n values of the model, discarding the burn-in prefix."""
    path, _ = simulate_path_with_noise(config, rng)
    return path
