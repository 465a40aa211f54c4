#pragma once

#include <Eigen/Dense>
#include <optional>

#include "gcpv/likelihood.hpp"

namespace gcpv {

struct NewtonOptions {
  double objective_tol = 1e-6;  // stop when |delta s| falls below this
  double grad_tol = 1e-6;       // or when ||grad s||_inf does
  int max_iterations = 100;
  int max_step_halvings = 30;
  /// Warm start for the mode (projected onto the range of K internally).
  std::optional<Eigen::VectorXd> warm_start;
  /// When set, receives s(f) after every accepted step (non-decreasing).
  std::vector<double>* objective_trace = nullptr;
};

/// Latent predictive distribution at one test point.
struct PredictiveGaussian {
  double mean = 0.0;
  double variance = 0.0;
  /// True when floating-point cancellation produced a negative variance that
  /// was clamped to 1e-12; callers count and report these.
  bool clamped = false;
};

/// Converged Laplace approximation q(f | y, z) = N(fhat, K - KQK).
///
/// Everything downstream works through the well-conditioned factor
/// B = I + Wtilde^{1/2} K Wtilde^{1/2}; no explicit K^{-1} is ever formed.
/// a_fhat is the Newton vector a with fhat = K a, kept from the final step as
/// the stable evaluation of K^{-1} fhat.
struct LaplaceFit {
  Eigen::VectorXd fhat;
  Eigen::VectorXd wtilde;        // clipped curvature diagonal, >= 0
  Eigen::MatrixXd chol_b;        // lower-triangular factor of B at fhat
  Eigen::VectorXd a_fhat;        // K^{-1} fhat, maintained as the Newton a
  Eigen::VectorXd grad_at_mode;  // grad log p(y | fhat)
  double loglik_at_mode = 0.0;   // log p(y | fhat)
  double log_marginal = 0.0;     // approximate log q(y | z)
  double log_det_k = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Modified Newton mode finding with negative-curvature clipping.
///
/// Iterates f <- K a with a = b - QKb, b = Wtilde f + grad log p(y|f), where
/// Wtilde = max(W, 0) is recomputed every step. A step-halving line search on
/// the objective s(f) = log p(y|f) - f'K^{-1}f/2 - log|K|/2 - (n/2) log 2pi
/// keeps the iterate sequence monotone. Returns the best iterate with
/// converged = false when the iteration cap is hit.
/// Throws CholeskyFailure if K cannot be factorized (or, defensively, B).
LaplaceFit find_mode(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                     const LikelihoodModel& lik, const NewtonOptions& opts = {});

/// Approximate log marginal likelihood
/// log q(y|z) = -fhat' a_fhat / 2 + log p(y|fhat) - sum log diag(chol B).
/// Throws NotConverged unless the fit converged or allow_unconverged is set.
double log_marginal(const LaplaceFit& fit, const Eigen::VectorXd& y,
                    const LikelihoodModel& lik, bool allow_unconverged = false);

/// Laplace predictive q(f*|y,z) = N(k*' grad_at_mode, k** - k*' Q k*) at one
/// test point; O(n^2) per point after the fit.
PredictiveGaussian predict_latent(const LaplaceFit& fit, const Eigen::MatrixXd& K,
                                  const Eigen::VectorXd& kstar, double kstarstar);

/// Posterior covariance K - KQK of the Laplace approximation, symmetrized.
Eigen::MatrixXd posterior_covariance(const LaplaceFit& fit, const Eigen::MatrixXd& K);

}  // namespace gcpv
