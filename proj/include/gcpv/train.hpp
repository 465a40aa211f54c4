#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <utility>

#include "gcpv/kernel.hpp"
#include "gcpv/laplace.hpp"
#include "gcpv/optim.hpp"
#include "gcpv/warp.hpp"

namespace gcpv {

enum class ModelKind {
  Gcpv,   // parametric warp, amplitude fixed at 1
  GpExp,  // g(x) = e^x, amplitude trained
};

struct ModelConfig {
  ModelKind kind = ModelKind::Gcpv;
  int warp_components = 1;
  bool amplitude_trainable() const { return kind == ModelKind::GpExp; }
};

/// Flat optimizer view of z = {theta, omega}.
///
/// Layout: [log l] [log A when trainable] [log a_j, log b_j, c_j per warp
/// component]. Positive parameters travel as logarithms so the optimizer is
/// unconstrained; the floor constant is frozen in the schema, not optimized.
class HyperVector {
 public:
  struct Schema {
    KernelFamily family = KernelFamily::SquaredExponential;
    bool amplitude_trainable = false;
    double fixed_amplitude = 1.0;  // used when not trainable
    bool exponential_warp = false;
    int warp_components = 1;       // ignored for the exponential warp
    double floor = 0.0;            // frozen during optimization

    Eigen::Index size() const {
      return 1 + (amplitude_trainable ? 1 : 0) + (exponential_warp ? 0 : 3 * warp_components);
    }
  };

  HyperVector() = default;
  HyperVector(Eigen::VectorXd values, Schema schema);

  static HyperVector pack(const KernelSpec& kernel, const WarpKind& warp,
                          bool amplitude_trainable);
  std::pair<KernelSpec, WarpKind> unpack() const;

  const Eigen::VectorXd& values() const { return values_; }
  const Schema& schema() const { return schema_; }
  HyperVector with_values(Eigen::VectorXd v) const { return HyperVector(std::move(v), schema_); }

 private:
  Eigen::VectorXd values_;
  Schema schema_;
};

struct TrainOptions {
  CgOptions cg;
  NewtonOptions newton;
  int multi_starts = 3;  // lengthscale scaled by {0.3, 1, 3}
  double jitter = -1.0;  // < 0: kernel default
};

struct TrainResult {
  HyperVector z;
  KernelSpec kernel;
  WarpKind warp;
  LaplaceFit fit;          // at the returned z, on the training data
  double objective = 0.0;  // log marginal at z
  long evaluations = 0;
  bool converged = false;
};

/// The training objective: build K(theta), find the Laplace mode, return the
/// approximate log marginal likelihood. Any failure (invalid parameters,
/// factorization, non-convergence) maps to the -1e300 sentinel so line
/// searches can back away. Stateless; optimize() uses a warm-started variant.
double objective(const HyperVector& z, std::span<const double> t, std::span<const double> y,
                 const TrainOptions& opts = {});

/// Default initialization for a model on the given data: l = span(t)/10,
/// A = 1, warp from the data-scale rule.
HyperVector default_init(std::span<const double> t, std::span<const double> y,
                         const ModelConfig& config);

/// Maximizes the Laplace approximate log marginal over z by multi-start
/// nonlinear conjugate gradient with central-difference gradients. Throws
/// DegenerateData when y is identically zero.
TrainResult optimize(std::span<const double> t, std::span<const double> y,
                     const ModelConfig& config, std::optional<HyperVector> init = {},
                     const TrainOptions& opts = {});

}  // namespace gcpv
