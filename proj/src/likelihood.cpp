#include "gcpv/likelihood.hpp"

#include <cmath>

#include "gcpv/errors.hpp"

namespace gcpv {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;
}

LikelihoodEval gcpv_loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& f,
                           const WarpKind& warp) {
  if (y.size() != f.size())
    throw LengthMismatch("gcpv_loglik: y and f lengths differ");

  const auto n = y.size();
  LikelihoodEval out;
  out.grad.resize(n);
  out.neg_hess_diag.resize(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const double sigma = warp_eval(warp, f(i));
    const double d1 = warp_deriv(warp, f(i));
    const double d2 = warp_deriv2(warp, f(i));
    const double y2 = y(i) * y(i);
    const double inv = 1.0 / sigma;
    const double inv2 = inv * inv;

    out.value += -kHalfLog2Pi - std::log(sigma) - 0.5 * y2 * inv2;
    // d/df log p = g' (y^2 / g^3 - 1 / g)
    out.grad(i) = d1 * (y2 * inv2 * inv - inv);
    // W = -d^2/df^2 log p = g''/g - g'^2/g^2 - y^2 g''/g^3 + 3 y^2 g'^2/g^4
    out.neg_hess_diag(i) =
        d2 * inv - d1 * d1 * inv2 - y2 * d2 * inv2 * inv + 3.0 * y2 * d1 * d1 * inv2 * inv2;
  }
  return out;
}

LikelihoodEval GcpvLikelihood::evaluate(const Eigen::VectorXd& y,
                                        const Eigen::VectorXd& f) const {
  return gcpv_loglik(y, f, warp_);
}

LikelihoodEval GaussianTestLikelihood::evaluate(const Eigen::VectorXd& y,
                                                const Eigen::VectorXd& f) const {
  if (y.size() != f.size())
    throw LengthMismatch("GaussianTestLikelihood: y and f lengths differ");
  const double inv2 = 1.0 / (noise_ * noise_);
  LikelihoodEval out;
  const Eigen::VectorXd r = y - f;
  out.value = -static_cast<double>(y.size()) * (kHalfLog2Pi + std::log(noise_)) -
              0.5 * inv2 * r.squaredNorm();
  out.grad = inv2 * r;
  out.neg_hess_diag = Eigen::VectorXd::Constant(y.size(), inv2);
  return out;
}

}  // namespace gcpv
