#pragma once

#include <Eigen/Dense>

#include "gcpv/warp.hpp"

namespace gcpv {

/// Log likelihood with its elementwise first and second derivatives in f.
/// negHessDiag is W_ii = -d^2 log p / df_i^2; entries may be negative for the
/// GCPV likelihood (it is not log-concave in f).
struct LikelihoodEval {
  double value = 0.0;            // nats
  Eigen::VectorXd grad;          // d log p / df_i
  Eigen::VectorXd neg_hess_diag; // W_ii
};

/// Observation model p(y | f) factorizing over points. Implementations take
/// the whole vector so they can vectorize; grad and neg_hess_diag are
/// elementwise by contract.
class LikelihoodModel {
 public:
  virtual ~LikelihoodModel() = default;
  virtual LikelihoodEval evaluate(const Eigen::VectorXd& y, const Eigen::VectorXd& f) const = 0;
};

/// GCPV observation model: y_i ~ N(0, g(f_i)^2).
class GcpvLikelihood final : public LikelihoodModel {
 public:
  explicit GcpvLikelihood(WarpKind warp) : warp_(std::move(warp)) {}
  LikelihoodEval evaluate(const Eigen::VectorXd& y, const Eigen::VectorXd& f) const override;
  const WarpKind& warp() const { return warp_; }

 private:
  WarpKind warp_;
};

/// y_i ~ N(f_i, s^2). Log-concave with constant curvature 1/s^2, which makes
/// the Laplace approximation exact; used as a correctness oracle downstream.
class GaussianTestLikelihood final : public LikelihoodModel {
 public:
  explicit GaussianTestLikelihood(double noise) : noise_(noise) {}
  LikelihoodEval evaluate(const Eigen::VectorXd& y, const Eigen::VectorXd& f) const override;
  double noise() const { return noise_; }

 private:
  double noise_;
};

/// Free-function form of the GCPV log likelihood.
LikelihoodEval gcpv_loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& f,
                           const WarpKind& warp);

}  // namespace gcpv
