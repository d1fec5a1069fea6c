"""Nonparametric first-order autoregression estimation with bias reduction.

Estimators follow the scikit-learn fit/predict convention: fit on a
univariate series, predict the autoregression function on a grid. Two
bias-reduction procedures are provided (data sharpening and bandwidth-ladder
extrapolation), together with the Monte Carlo and bootstrap machinery to
study them.
"""

__version__ = "0.1.0"

from .arfit import LinearAR, LinearARFit, ar_residuals, fit_ar, sample_acf, simulate_ar
from .bandwidth import (
    RotBandwidth,
    fixed_bandwidth_preset,
    resolve_bandwidth,
    rule_of_thumb,
    sharpen_adjust,
)
from .biasstudy import (
    DecompositionCurves,
    MethodCurves,
    StudyConfig,
    StudyResult,
    bias_curve,
    decomposition_replicate,
    decomposition_study,
    mae_curve,
    run_study,
    study_presets,
)
from .boottest import (
    ExceedanceReport,
    TestBands,
    direct_bands,
    empirical_quantile,
    exceedance,
    method_curve,
    observed_residual_curve,
    residual_bands,
)
from .cheng import ChengAR, bandwidth_sequence, cheng_curve, fit_h2_regression
from .datasets import Dataset, bundled_dataset, dataset_names
from .kernels import KERNELS, kernel_value, roughness, scaled_kernel, second_moment
from .localreg import (
    CurveEstimate,
    DegeneracyError,
    DegenerateDesign,
    LocalAR,
    NoLocalData,
    estimate_curve,
    estimate_point,
    lag_pairs,
    point_weights,
    weight_matrix,
)
from .sharpen import SharpenedAR, fitted_values, sharpen_responses, sharpened_curve
from .simulate import (
    SimulationConfig,
    linear_function,
    replicate_stream,
    simulate_path,
    simulate_path_with_noise,
    true_function,
)

__all__ = [
    "__version__",
    "LinearAR", "LinearARFit", "ar_residuals", "fit_ar", "sample_acf", "simulate_ar",
    "RotBandwidth", "fixed_bandwidth_preset", "resolve_bandwidth", "rule_of_thumb",
    "sharpen_adjust",
    "DecompositionCurves", "MethodCurves", "StudyConfig", "StudyResult",
    "bias_curve", "decomposition_replicate", "decomposition_study", "mae_curve",
    "run_study", "study_presets",
    "ExceedanceReport", "TestBands", "direct_bands", "empirical_quantile",
    "exceedance", "method_curve", "observed_residual_curve", "residual_bands",
    "ChengAR", "bandwidth_sequence", "cheng_curve", "fit_h2_regression",
    "Dataset", "bundled_dataset", "dataset_names",
    "KERNELS", "kernel_value", "roughness", "scaled_kernel", "second_moment",
    "CurveEstimate", "DegeneracyError", "DegenerateDesign", "LocalAR", "NoLocalData",
    "estimate_curve", "estimate_point", "lag_pairs", "point_weights", "weight_matrix",
    "SharpenedAR", "fitted_values", "sharpen_responses", "sharpened_curve",
    "SimulationConfig", "linear_function", "replicate_stream", "simulate_path",
    "simulate_path_with_noise", "true_function",
]
