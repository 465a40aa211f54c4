#pragma once

#include <span>
#include <vector>

#include "gcpv/rng.hpp"

namespace gcpv {

/// GARCH(1,1) conditional-variance recursion
/// sigma2_t = omega + alpha y_{t-1}^2 + beta sigma2_{t-1}, Gaussian innovations.
struct GarchParams {
  double omega = 1e-5;  // > 0
  double alpha = 0.05;  // >= 0
  double beta = 0.90;   // >= 0, alpha + beta < 1

  bool valid() const {
    return omega > 0.0 && alpha >= 0.0 && beta >= 0.0 && alpha + beta < 1.0;
  }
  double unconditional_variance() const { return omega / (1.0 - alpha - beta); }
};

struct GarchFilterResult {
  std::vector<double> sigma2;  // conditional variances, sigma2[0] = sigma0sq
  double loglik = 0.0;
};

/// Runs the variance recursion over y and accumulates the Gaussian log
/// likelihood sum( -0.5 (log 2pi + log sigma2_t + y_t^2 / sigma2_t) ).
GarchFilterResult garch_filter(const GarchParams& params, std::span<const double> y,
                               double sigma0sq);

struct GarchFit {
  GarchParams params;
  double sigma0sq = 0.0;  // presample variance (about the zero mean)
  double loglik = 0.0;
  double init_loglik = 0.0;
  long evaluations = 0;
};

/// Maximum-likelihood fit via Nelder-Mead on transformed coordinates
/// (log omega; alpha, beta mapped through a logistic reparameterization that
/// enforces alpha + beta < 1 - 1e-6). Initialization: omega = 0.1 var(y),
/// alpha = 0.05, beta = 0.9, with var taken about the zero mean. Small
/// samples (even a single observation, as in the expanding forecast
/// protocol) fit but estimate little beyond the variance level. Throws
/// FitFailure on empty or identically-zero data, or when the search ends
/// below its initialization.
GarchFit garch_fit(std::span<const double> y);

/// h-step-ahead conditional variance forecast from state (y_n, sigma_n_sq):
/// one step of the full recursion, then h-1 steps of
/// sigma2_{n+k} = omega + (alpha + beta) sigma2_{n+k-1}. Converges to the
/// unconditional variance as h grows.
double garch_forecast(const GarchParams& params, std::span<const double> y,
                      double sigma_n_sq, int h);

struct GarchPath {
  std::vector<double> y;
  std::vector<double> sigma2;  // true conditional variances
};

/// Simulates a GARCH(1,1) path started at the unconditional variance.
GarchPath garch_simulate(const GarchParams& params, int n, Rng& rng);

}  // namespace gcpv
