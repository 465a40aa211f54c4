"""Gaussian copula process volatility (GCPV).

Latent volatility inference: sigma(t) = g(f(t)) with a GP prior on f and a
learned monotone warp g, observations y_t ~ N(0, sigma(t)^2). Inference by a
clipped-curvature Laplace approximation or elliptical slice sampling, with
hyperparameter learning, a GARCH(1,1) baseline and a forecasting harness.
"""

from gcpv._core import (
    ExponentialWarp,
    GarchParams,
    GcpvError,
    KernelSpec,
    LaplaceFit,
    PredictionSeries,
    SampleSet,
    TimeSeries,
    TrainedModel,
    WarpComponent,
    WarpParams,
    cross_covariance,
    find_mode,
    find_mode_gaussian,
    fit,
    garch_filter,
    garch_fit,
    garch_forecast,
    garch_simulate,
    gcpv_loglik,
    kernel_eval,
    kernel_matrix,
    load_series,
    marginal_cdf,
    marginal_pdf,
    mse,
    posterior_covariance,
    predict_latent,
    predict_mixture,
    run_forecast,
    run_historical,
    sample_posterior,
    simulate_jump,
    simulate_trig,
    warp_deriv,
    warp_eval,
    warp_inverse,
)

__all__ = [
    "ExponentialWarp",
    "GarchParams",
    "GcpvError",
    "KernelSpec",
    "LaplaceFit",
    "PredictionSeries",
    "SampleSet",
    "TimeSeries",
    "TrainedModel",
    "WarpComponent",
    "WarpParams",
    "cross_covariance",
    "find_mode",
    "find_mode_gaussian",
    "fit",
    "garch_filter",
    "garch_fit",
    "garch_forecast",
    "garch_simulate",
    "gcpv_loglik",
    "kernel_eval",
    "kernel_matrix",
    "load_series",
    "marginal_cdf",
    "marginal_pdf",
    "mse",
    "posterior_covariance",
    "predict_latent",
    "predict_mixture",
    "run_forecast",
    "run_historical",
    "sample_posterior",
    "simulate_jump",
    "simulate_trig",
    "warp_deriv",
    "warp_eval",
    "warp_inverse",
]

__version__ = "0.1.0"
