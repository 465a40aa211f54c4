#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace gcpv {

enum class KernelFamily { SquaredExponential };

/// Stationary covariance function k(t,t') for the latent GP.
///
/// Only the squared exponential k(t,t') = A exp(-(t-t')^2 / l^2) ships; the
/// family tag keeps room for Matern / periodic / Brownian variants behind the
/// same four entry points (eval, matrix, cross vector, hyperparameter names).
struct KernelSpec {
  KernelFamily family = KernelFamily::SquaredExponential;
  double amplitude = 1.0;    // A, prior variance of f
  double lengthscale = 1.0;  // l, in units of t

  bool valid() const { return amplitude > 0.0 && lengthscale > 0.0; }
};

/// Names of the log-space hyperparameters, in pack order. Positivity of A and
/// l is enforced by exposing their logarithms to optimizers.
std::vector<std::string> kernel_hyper_names(const KernelSpec& spec);

double kernel_eval(const KernelSpec& spec, double t, double t2);

/// Dense covariance matrix K with K_ij = k(t_i, t_j) + jitter * delta_ij.
/// Jitter < 0 means the default 1e-8 * A.
Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, std::span<const double> times,
                              double jitter = -1.0);

/// Cross-covariance vector (k*)_i = k(t*, t_i). Never jittered.
Eigen::VectorXd cross_covariance(const KernelSpec& spec, std::span<const double> times,
                                 double tstar);

/// Default diagonal jitter for a given amplitude.
inline double default_jitter(const KernelSpec& spec) { return 1e-8 * spec.amplitude; }

/// Cholesky factor (lower) of a symmetric positive definite matrix.
/// Throws CholeskyFailure if the factorization does not succeed, which for
/// kernel matrices signals duplicate times with zero jitter or pathological
/// hyperparameters.
Eigen::LLT<Eigen::MatrixXd> cholesky(const Eigen::MatrixXd& m);

}  // namespace gcpv
