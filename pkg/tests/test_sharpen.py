import numpy as np
import pytest
from sklearn.base import clone

from arsharp import (
    SharpenedAR,
    estimate_curve,
    fitted_values,
    lag_pairs,
    point_weights,
    sharpen_responses,
    sharpened_curve,
)
from arsharp.kernels import scaled_kernel
from arsharp.simulate import SimulationConfig, simulate_path


def two_pass_oracle(series, grid, kind, kernel, h):
    """Fit, sharpen, re-smooth by direct summation; no shared code paths."""
    z = np.asarray(series, dtype=float)
    x, y = z[:-1], z[1:]

    def smooth_at(point, responses):
        k = scaled_kernel(kernel, h, x - point)
        if kind == "lc":
            return (k * responses).sum() / k.sum()
        d = x - point
        s0, s1, s2 = k.sum(), (k * d).sum(), (k * d * d).sum()
        w = k * (s2 - d * s1) / (s0 * s2 - s1 * s1)
        return (w * responses).sum()

    fitted = np.array([smooth_at(xi, y) for xi in x])
    zstar = 2.0 * y - fitted
    return np.array([smooth_at(g, zstar) for g in grid])


def linear_series(a=0.4, b=-0.85, z0=4.0, n=35):
    z = [z0]
    for _ in range(n - 1):
        z.append(a + b * z[-1])
    return np.array(z)


class TestFittedValues:
    def test_constant_series(self):
        vals, ok = fitted_values([3.0] * 8, "lc", "epanechnikov", 1.0)
        assert ok.all()
        assert np.allclose(vals, 3.0)

    def test_linear_exactness(self):
        z = linear_series()
        vals, ok = fitted_values(z, "ll", "gaussian", 1.0)
        assert ok.all()
        x = z[:-1]
        assert np.allclose(vals, 0.4 - 0.85 * x, atol=1e-8)

    def test_matches_direct_summation_oracle(self):
        series = np.array([0.0, 1.0, 0.5, 0.8])
        x, y = lag_pairs(series)
        vals, ok = fitted_values(series, "lc", "gaussian", 1.0)
        assert ok.all()
        for i, xi in enumerate(x):
            k = scaled_kernel("gaussian", 1.0, x - xi)
            assert vals[i] == pytest.approx((k * y).sum() / k.sum(), abs=1e-14)

    def test_leave_in(self):
        # the pair's own kernel weight is included, so an isolated predictor
        # reproduces its own response exactly
        series = np.array([0.0, 100.0, 0.5, 0.3, 0.1])
        vals, ok = fitted_values(series, "lc", "epanechnikov", 0.5)
        assert ok.all()
        assert vals[1] == pytest.approx(0.5)  # ghat(100.0) sees only pair 2


class TestSharpenResponses:
    def test_residual_free_fixed_point(self):
        z = linear_series()
        zstar, ok = sharpen_responses(z, "ll", "gaussian", 1.0)
        assert ok.all()
        assert np.allclose(zstar, z[1:], atol=1e-8)

    def test_constant_series(self):
        zstar, ok = sharpen_responses([2.0] * 6, "lc", "epanechnikov", 1.0)
        assert np.allclose(zstar, 2.0)

    def test_rearrangement_identity(self):
        z = simulate_path(SimulationConfig(g="xsin", n=40, seed=2))
        _, y = lag_pairs(z)
        zstar, ok = sharpen_responses(z, "lc", "gaussian", 0.5)
        fitted, _ = fitted_values(z, "lc", "gaussian", 0.5)
        assert np.allclose(zstar - y, y - fitted, atol=1e-12)


class TestSharpenedCurve:
    def test_linear_series_all_curves_coincide(self):
        z = linear_series()
        grid = np.linspace(z[:-1].min(), z[:-1].max(), 55)
        raw = estimate_curve(z, grid, "ll", "gaussian", 1.0)
        sharp = sharpened_curve(z, grid, "ll", "gaussian", 1.0)
        truth = 0.4 - 0.85 * grid
        assert np.allclose(raw.values, truth, atol=1e-8)
        assert np.allclose(sharp.values, truth, atol=1e-8)

    def test_twice_minus_smooth_identity(self):
        z = simulate_path(SimulationConfig(g="xsin", n=60, seed=4))
        x, y = lag_pairs(z)
        grid = np.linspace(np.quantile(x, 0.1), np.quantile(x, 0.9), 31)
        for kind in ("lc", "ll"):
            sharp = sharpened_curve(z, grid, kind, "epanechnikov", 0.45)
            fitted, _ = fitted_values(z, kind, "epanechnikov", 0.45)
            for j, g in enumerate(grid):
                if not sharp.defined[j]:
                    continue
                w = point_weights(x, g, kind, "epanechnikov", 0.45)
                rhs = 2.0 * (w @ y) - w @ fitted
                assert sharp.values[j] == pytest.approx(rhs, abs=1e-10)

    def test_linearity_in_responses(self):
        # sharpening is linear in the response vector (shared predictors)
        rng = np.random.default_rng(9)
        z = simulate_path(SimulationConfig(g="xsin", n=30, seed=11))
        x, _ = lag_pairs(z)
        grid = np.linspace(-0.4, 0.4, 9)
        from arsharp.localreg import weight_matrix

        def sharpen_vec(resp):
            v, _ = weight_matrix(x, x, "lc", "gaussian", 0.6)
            w, _ = weight_matrix(x, grid, "lc", "gaussian", 0.6)
            return w @ (2.0 * resp - v @ resp)

        u = rng.standard_normal(x.size)
        v = rng.standard_normal(x.size)
        a, b = 1.3, -0.7
        assert np.allclose(sharpen_vec(a * u + b * v),
                           a * sharpen_vec(u) + b * sharpen_vec(v), atol=1e-10)

    def test_two_pass_summation_oracle(self):
        series = np.array([0.0, 1.0, 0.5, 0.8])
        grid = np.array([0.2, 0.5, 0.9])
        for kind in ("lc", "ll"):
            curve = sharpened_curve(series, grid, kind, "gaussian", 1.0)
            expected = two_pass_oracle(series, grid, kind, "gaussian", 1.0)
            assert curve.defined.all()
            assert np.allclose(curve.values, expected, atol=1e-12)


class TestSharpenedAREstimator:
    def test_params(self):
        est = SharpenedAR(kind="lc", h=0.3, adjust_h="n45")
        assert est.get_params()["adjust_h"] == "n45"
        clone(est)

    def test_adjust_h_inflates(self):
        z = simulate_path(SimulationConfig(g="xsin", n=80, seed=13))
        plain = SharpenedAR(kind="ll", h=0.5).fit(z)
        inflated = SharpenedAR(kind="ll", h=0.5, adjust_h="n45").fit(z)
        assert inflated.h_ == pytest.approx(0.5 * len(z) ** (4 / 45))
        assert plain.h_ == 0.5

    def test_predict_matches_curve(self):
        z = simulate_path(SimulationConfig(g="xsin", n=50, seed=14))
        grid = np.linspace(-0.5, 0.5, 13)
        est = SharpenedAR(kind="ll", h=0.5).fit(z)
        curve = sharpened_curve(z, grid, "ll", "epanechnikov", 0.5)
        assert np.allclose(est.predict(grid), curve.values, equal_nan=True)

    def test_bad_adjust_flag(self):
        z = simulate_path(SimulationConfig(g="xsin", n=30, seed=15))
        with pytest.raises(ValueError):
            SharpenedAR(kind="ll", h=0.5, adjust_h="maybe").fit(z)
