#include <doctest.h>

#include <cmath>

#include "gcpv/errors.hpp"
#include "gcpv/likelihood.hpp"
#include "gcpv/rng.hpp"

using namespace gcpv;

namespace {

WarpParams random_params(Rng& rng) {
  WarpParams p;
  p.components = {{std::exp(rng.uniform(-1.5, 1.5)), std::exp(rng.uniform(-1.5, 1.0)),
                   rng.uniform(-2.0, 2.0)}};
  p.floor = 0.05;
  return p;
}

}  // namespace

TEST_CASE("gcpv_loglik known values") {
  // y = 0, g(f) = 1: standard normal density at zero.
  const WarpKind e = ExponentialWarp{};
  Eigen::VectorXd y(1), f(1);
  y << 0.0;
  f << 0.0;
  CHECK(gcpv_loglik(y, f, e).value == doctest::Approx(-0.9189385332046727).epsilon(1e-14));

  y << 1.0;
  CHECK(gcpv_loglik(y, f, e).value == doctest::Approx(-1.4189385332046727).epsilon(1e-14));
}

TEST_CASE("length mismatch is rejected") {
  Eigen::VectorXd y(2), f(3);
  y.setZero();
  f.setZero();
  CHECK_THROWS_AS(gcpv_loglik(y, f, ExponentialWarp{}), LengthMismatch);
}

TEST_CASE("gradient and curvature match finite differences") {
  Rng rng(77);
  for (int rep = 0; rep < 200; ++rep) {
    const WarpKind w =
        rep % 4 == 0 ? WarpKind(ExponentialWarp{}) : WarpKind(random_params(rng));
    const int n = 1 + static_cast<int>(rng.uniform_index(4));
    Eigen::VectorXd y(n), f(n);
    for (int i = 0; i < n; ++i) {
      y(i) = rng.uniform(-2.0, 2.0);
      f(i) = rng.uniform(-2.0, 3.0);
    }
    // Skip draws parked on the warp floor: every term there is dominated by
    // 1/sigma^2 magnitudes that drown finite differences in roundoff.
    bool near_floor = false;
    for (int i = 0; i < n; ++i)
      if (warp_eval(w, f(i)) < 0.15) near_floor = true;
    if (near_floor) continue;

    const LikelihoodEval eval = gcpv_loglik(y, f, w);

    const auto value_at = [&](int i, double df) {
      Eigen::VectorXd fi = f;
      fi(i) += df;
      return gcpv_loglik(y, fi, w).value;
    };
    for (int i = 0; i < n; ++i) {
      const double h = 1e-5;
      const double grad_fd = (value_at(i, h) - value_at(i, -h)) / (2.0 * h);
      CHECK(std::fabs(grad_fd - eval.grad(i)) <=
            1e-5 * std::max(1.0, std::fabs(eval.grad(i))));

      // Richardson-extrapolated second difference.
      const double h2 = 2e-4;
      const double v0 = eval.value;
      const auto d2 = [&](double step) {
        return (value_at(i, step) - 2.0 * v0 + value_at(i, -step)) / (step * step);
      };
      const double hess_fd = (4.0 * d2(0.5 * h2) - d2(h2)) / 3.0;
      CHECK(std::fabs(-hess_fd - eval.neg_hess_diag(i)) <=
            1e-4 * std::max(1.0, std::fabs(eval.neg_hess_diag(i))));
    }
  }
}

TEST_CASE("value depends on y only through y^2") {
  Rng rng(78);
  const WarpKind w = random_params(rng);
  Eigen::VectorXd y(3), f(3);
  y << 0.3, -1.2, 0.8;
  f << 0.1, -0.5, 1.0;
  const double a = gcpv_loglik(y, f, w).value;
  const double b = gcpv_loglik(-y, f, w).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-15));
}

TEST_CASE("for y = 0 the gradient pushes g(f) toward the floor") {
  // log p = -log g - 0: decreasing g increases the likelihood, so the
  // gradient in f must be negative everywhere.
  const WarpKind w = WarpParams{{{1.0, 1.0, 0.0}}, 0.05};
  Eigen::VectorXd y(1), f(1);
  y << 0.0;
  for (double fv : {-3.0, -1.0, 0.0, 2.0, 5.0}) {
    f << fv;
    CHECK(gcpv_loglik(y, f, w).grad(0) < 0.0);
  }
}

TEST_CASE("GaussianTestLikelihood has constant curvature 1/s^2") {
  Rng rng(79);
  const double s = 0.7;
  const GaussianTestLikelihood lik(s);
  Eigen::VectorXd y(4), f(4);
  for (int i = 0; i < 4; ++i) {
    y(i) = rng.uniform(-2.0, 2.0);
    f(i) = rng.uniform(-2.0, 2.0);
  }
  const LikelihoodEval eval = lik.evaluate(y, f);
  for (int i = 0; i < 4; ++i) {
    CHECK(eval.neg_hess_diag(i) == doctest::Approx(1.0 / (s * s)).epsilon(1e-14));
    CHECK(eval.grad(i) == doctest::Approx((y(i) - f(i)) / (s * s)).epsilon(1e-12));
  }
  // value equals the sum of normal log densities
  double expect = 0.0;
  for (int i = 0; i < 4; ++i)
    expect += -0.5 * std::log(2.0 * M_PI * s * s) -
              0.5 * (y(i) - f(i)) * (y(i) - f(i)) / (s * s);
  CHECK(eval.value == doctest::Approx(expect).epsilon(1e-12));
}
