#include "gcpv/garch.hpp"

#include <cmath>

#include "gcpv/errors.hpp"
#include "gcpv/optim.hpp"

namespace gcpv {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kStationaryCap = 1.0 - 1e-6;

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logit(double p) { return std::log(p / (1.0 - p)); }

// (log omega, logit persistence, logit split) <-> GarchParams with
// alpha = s u, beta = s (1 - u), s < kStationaryCap.
GarchParams from_unconstrained(const Eigen::VectorXd& v) {
  const double s = kStationaryCap * logistic(v(1));
  const double u = logistic(v(2));
  return GarchParams{std::exp(v(0)), s * u, s * (1.0 - u)};
}

Eigen::VectorXd to_unconstrained(const GarchParams& p) {
  const double s = p.alpha + p.beta;
  Eigen::VectorXd v(3);
  v(0) = std::log(p.omega);
  v(1) = logit(std::min(s / kStationaryCap, 1.0 - 1e-12));
  v(2) = logit(std::min(std::max(p.alpha / s, 1e-12), 1.0 - 1e-12));
  return v;
}

// Variance about the model's zero mean; returns are not re-centered.
double sample_variance(std::span<const double> y) {
  double ss = 0.0;
  for (double v : y) ss += v * v;
  return ss / static_cast<double>(y.size());
}

}  // namespace

GarchFilterResult garch_filter(const GarchParams& params, std::span<const double> y,
                               double sigma0sq) {
  GarchFilterResult out;
  out.sigma2.resize(y.size());
  double s2 = sigma0sq;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i > 0) s2 = params.omega + params.alpha * y[i - 1] * y[i - 1] + params.beta * s2;
    out.sigma2[i] = s2;
    out.loglik += -0.5 * (kLog2Pi + std::log(s2) + y[i] * y[i] / s2);
  }
  return out;
}

GarchFit garch_fit(std::span<const double> y) {
  if (y.empty()) throw FitFailure("garch_fit: no observations");
  const double var = sample_variance(y);
  if (!(var > 0.0)) throw FitFailure("garch_fit: data have zero variance");

  GarchParams init{0.1 * var, 0.05, 0.9};
  const double sigma0sq = var;

  long evaluations = 0;
  const ObjectiveFn neg_loglik = [&](const Eigen::VectorXd& v) {
    ++evaluations;
    const GarchParams p = from_unconstrained(v);
    if (!p.valid() || !std::isfinite(p.omega)) return 1e300;
    const double ll = garch_filter(p, y, sigma0sq).loglik;
    return std::isfinite(ll) ? -ll : 1e300;
  };

  const double init_loglik = garch_filter(init, y, sigma0sq).loglik;
  NelderMeadOptions nm;
  nm.max_iterations = 2000;
  const OptimResult r = minimize_nelder_mead(neg_loglik, to_unconstrained(init), nm);

  GarchFit fit;
  fit.params = from_unconstrained(r.x);
  fit.sigma0sq = sigma0sq;
  fit.loglik = -r.value;
  fit.init_loglik = init_loglik;
  fit.evaluations = evaluations;
  if (!(fit.loglik >= init_loglik) || !fit.params.valid())
    throw FitFailure("garch_fit: optimizer could not improve on initialization (loglik " +
                     std::to_string(fit.loglik) + " vs " + std::to_string(init_loglik) + ")");
  return fit;
}

double garch_forecast(const GarchParams& params, std::span<const double> y,
                      double sigma_n_sq, int h) {
  const double y_n = y.empty() ? 0.0 : y.back();
  double s2 = params.omega + params.alpha * y_n * y_n + params.beta * sigma_n_sq;
  for (int k = 2; k <= h; ++k) s2 = params.omega + (params.alpha + params.beta) * s2;
  return s2;
}

GarchPath garch_simulate(const GarchParams& params, int n, Rng& rng) {
  GarchPath path;
  path.y.resize(static_cast<std::size_t>(n));
  path.sigma2.resize(static_cast<std::size_t>(n));
  double s2 = params.unconditional_variance();
  for (int i = 0; i < n; ++i) {
    if (i > 0) s2 = params.omega + params.alpha * path.y[i - 1] * path.y[i - 1] + params.beta * s2;
    path.sigma2[static_cast<std::size_t>(i)] = s2;
    path.y[static_cast<std::size_t>(i)] = std::sqrt(s2) * rng.normal();
  }
  return path;
}

}  // namespace gcpv
