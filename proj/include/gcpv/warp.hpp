#pragma once

#include <span>
#include <variant>
#include <vector>

namespace gcpv {

/// One softplus term a * log(exp(b (x + c)) + 1) of the warping function.
struct WarpComponent {
  double a = 1.0;  // > 0
  double b = 1.0;  // > 0
  double c = 0.0;
};

/// Parameters of the monotone warp g mapping latent GP values to standard
/// deviations: g(x) = floor + sum_j a_j log(exp(b_j (x + c_j)) + 1).
///
/// The additive floor keeps the optimizer from driving g to zero at isolated
/// inputs; it is set from the data scale and frozen during training.
struct WarpParams {
  std::vector<WarpComponent> components{WarpComponent{}};
  double floor = 0.0;  // >= 0, units of sigma

  bool valid() const {
    if (components.empty() || floor < 0.0) return false;
    for (const auto& comp : components)
      if (!(comp.a > 0.0) || !(comp.b > 0.0)) return false;
    return true;
  }
};

/// The unparametrized alternative g(x) = e^x used by the GP-EXP variant.
struct ExponentialWarp {};

using WarpKind = std::variant<WarpParams, ExponentialWarp>;

inline bool warp_is_parametric(const WarpKind& w) {
  return std::holds_alternative<WarpParams>(w);
}

/// Essential infimum of g: the floor for a parametric warp, 0 for e^x.
double warp_floor(const WarpKind& w);

/// g(x). Strictly increasing, overflow-safe for |x| up to 1e6 and b up to 1e3.
double warp_eval(const WarpKind& w, double x);

/// g'(x) > 0.
double warp_deriv(const WarpKind& w, double x);

/// g''(x), needed for the likelihood curvature.
double warp_deriv2(const WarpKind& w, double x);

/// x such that g(x) = sigma, to |g(x) - sigma| <= 1e-10 max(1, sigma).
/// Bracket expansion from [-1, 1] followed by safeguarded Newton/bisection;
/// closed-form log(sigma) for the exponential warp.
/// Throws OutOfRange when sigma has no preimage (sigma <= floor).
double warp_inverse(const WarpKind& w, double sigma);

/// Marginal cdf of sigma implied by a standard normal latent: Phi(g^{-1}(a)),
/// or 0 below the essential infimum of g. Assumes k(t,t) = 1.
double marginal_cdf(const WarpKind& w, double a);

/// Change-of-variables marginal density phi(g^{-1}(a)) / g'(g^{-1}(a)).
double marginal_pdf(const WarpKind& w, double a);

/// Floor rule: one tenth of the smallest nonzero |y| in the training set
/// (0 when every observation is zero; train rejects that case separately).
double default_floor(std::span<const double> y);

/// Data-scale initialization: a1 = sample std of y (guarded for tiny n),
/// b1 = 1, c1 = 0, floor from default_floor.
WarpParams default_warp_init(std::span<const double> y, int components = 1);

}  // namespace gcpv
