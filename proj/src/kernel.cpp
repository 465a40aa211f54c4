#include "gcpv/kernel.hpp"

#include <cmath>

#include "gcpv/errors.hpp"

namespace gcpv {

std::vector<std::string> kernel_hyper_names(const KernelSpec&) {
  return {"log_amplitude", "log_lengthscale"};
}

double kernel_eval(const KernelSpec& spec, double t, double t2) {
  const double d = (t - t2) / spec.lengthscale;
  return spec.amplitude * std::exp(-d * d);
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, std::span<const double> times,
                              double jitter) {
  if (jitter < 0.0) jitter = default_jitter(spec);
  const auto n = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = spec.amplitude + jitter;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = kernel_eval(spec, times[static_cast<std::size_t>(i)],
                                   times[static_cast<std::size_t>(j)]);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Eigen::VectorXd cross_covariance(const KernelSpec& spec, std::span<const double> times,
                                 double tstar) {
  const auto n = static_cast<Eigen::Index>(times.size());
  Eigen::VectorXd kstar(n);
  for (Eigen::Index i = 0; i < n; ++i)
    kstar(i) = kernel_eval(spec, tstar, times[static_cast<std::size_t>(i)]);
  return kstar;
}

Eigen::LLT<Eigen::MatrixXd> cholesky(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw CholeskyFailure("Cholesky factorization failed for " + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()) + " matrix");
  return llt;
}

}  // namespace gcpv
