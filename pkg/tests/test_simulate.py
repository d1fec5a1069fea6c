import numpy as np
import pytest

from arsharp import (
    SimulationConfig,
    linear_function,
    replicate_stream,
    simulate_path,
    simulate_path_with_noise,
    true_function,
)


class TestTrueFunction:
    def test_named_values(self):
        assert true_function("xsin")(0.0) == 0.0
        assert true_function("cos")(0.0) == 1.0
        assert true_function("sin")(np.pi / 2) == pytest.approx(1.0)
        assert true_function("xcos")(2.0) == pytest.approx(2.0 * np.cos(2.0))
        assert true_function("zero")(123.4) == 0.0

    def test_linear_spec(self):
        g = true_function("linear:12.59,0.2692")
        assert g(10.0) == pytest.approx(15.282)
        assert linear_function(12.59, 0.2692)(10.0) == pytest.approx(15.282)

    def test_callable_passthrough(self):
        f = lambda x: x + 1  # noqa: E731
        assert true_function(f) is f

    def test_unknown(self):
        with pytest.raises(ValueError):
            true_function("spiral")
        with pytest.raises(ValueError):
            true_function("linear:1")


class TestReplicateStream:
    def test_same_key_same_stream(self):
        a = replicate_stream(7, 0).standard_normal(10)
        b = replicate_stream(7, 0).standard_normal(10)
        assert np.array_equal(a, b)

    def test_distinct_indices_differ(self):
        a = replicate_stream(7, 0).standard_normal(10)
        b = replicate_stream(7, 1).standard_normal(10)
        assert not np.array_equal(a, b)

    def test_streams_nearly_uncorrelated(self):
        a = replicate_stream(99, 0).standard_normal(10_000)
        b = replicate_stream(99, 1).standard_normal(10_000)
        r = np.corrcoef(a, b)[0, 1]
        assert abs(r) < 0.05

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            replicate_stream(1, -1)


class TestSimulatePath:
    def test_noise_free_limit_is_deterministic_iteration(self):
        config = SimulationConfig(g="xsin", sigma=1e-300, n=10, burn_in=0, z0=1.3)
        path = simulate_path(config, replicate_stream(0, 0))
        expected = []
        z = 1.3
        for _ in range(10):
            z = z * np.sin(z)
            expected.append(z)
        assert np.allclose(path, expected, atol=1e-12)

    def test_zero_function_gives_iid_noise(self):
        config = SimulationConfig(g="zero", sigma=0.5, n=50_000, burn_in=0, seed=1)
        path = simulate_path(config, replicate_stream(1, 0))
        assert abs(path.mean()) < 4 * 0.5 / np.sqrt(path.size)
        se_var = 0.25 * np.sqrt(2.0 / path.size)
        assert abs(path.var() - 0.25) < 4 * se_var

    def test_seed_determinism_bit_identical(self):
        config = SimulationConfig(g="xsin", sigma=0.5, n=200, seed=42)
        a = simulate_path(config, replicate_stream(42, 3))
        b = simulate_path(config, replicate_stream(42, 3))
        assert np.array_equal(a, b)

    def test_path_length_and_burn_in(self):
        config = SimulationConfig(g="cos", sigma=0.5, n=37, burn_in=11)
        assert simulate_path(config, replicate_stream(0, 0)).size == 37

    def test_noise_alignment(self):
        config = SimulationConfig(g="xsin", sigma=0.5, n=60, burn_in=20, seed=5)
        z, eps = simulate_path_with_noise(config, replicate_stream(5, 0))
        assert eps.size == z.size - 1
        g = true_function("xsin")
        assert np.allclose(z[1:], g(z[:-1]) + 0.5 * eps, atol=1e-15)

    def test_xsin_bounded_over_long_horizon(self):
        config = SimulationConfig(g="xsin", sigma=0.5, n=100_000, burn_in=0, seed=9)
        path = simulate_path(config, replicate_stream(9, 0))
        assert np.all(np.isfinite(path))
        assert np.max(np.abs(path)) < 50.0

    def test_cos_bounded_after_one_step(self):
        config = SimulationConfig(g="cos", sigma=0.5, n=10_000, burn_in=1, seed=10)
        path = simulate_path(config, replicate_stream(10, 0))
        assert np.max(np.abs(path)) < 1.0 + 6 * 0.5

    def test_noise_moments(self):
        eps = replicate_stream(123, 0).standard_normal(1_000_000)
        assert abs(eps.mean()) < 4.0 / np.sqrt(eps.size)
        assert abs(eps.var() - 1.0) < 4.0 * np.sqrt(2.0 / eps.size)

    def test_invalid_config(self):
        with pytest.raises(ValueError):
            SimulationConfig(g="xsin", sigma=0.0)
        with pytest.raises(ValueError):
            SimulationConfig(g="xsin", n=2)
        with pytest.raises(ValueError):
            SimulationConfig(g="xsin", burn_in=-1)
