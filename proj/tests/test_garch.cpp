#include <doctest.h>

#include <cmath>
#include <vector>

#include "gcpv/errors.hpp"
#include "gcpv/garch.hpp"
#include "gcpv/rng.hpp"

using namespace gcpv;

TEST_CASE("filter recursion by hand") {
  SUBCASE("alpha = beta = 0 gives constant variance omega after the presample") {
    const GarchParams p{0.25, 0.0, 0.0};
    const std::vector<double> y{1.0, 2.0, 3.0, 4.0};
    const auto r = garch_filter(p, y, 0.7);
    CHECK(r.sigma2[0] == doctest::Approx(0.7));
    for (std::size_t i = 1; i < y.size(); ++i) CHECK(r.sigma2[i] == doctest::Approx(0.25));
  }
  SUBCASE("one step") {
    const GarchParams p{0.1, 0.2, 0.7};
    const std::vector<double> y{1.0, 0.0};
    const auto r = garch_filter(p, y, 1.0);
    CHECK(r.sigma2[1] == doctest::Approx(1.0));  // 0.1 + 0.2 + 0.7
  }
  SUBCASE("log likelihood of standard normals under unit variance") {
    const GarchParams p{1.0, 0.0, 0.0};
    const std::vector<double> y{0.0, 0.0};
    const auto r = garch_filter(p, y, 1.0);
    CHECK(r.loglik == doctest::Approx(-std::log(2.0 * M_PI)).epsilon(1e-12));
  }
}

TEST_CASE("filter variances never fall below omega") {
  Rng rng(31);
  const GarchParams p{0.05, 0.1, 0.8};
  GarchPath path = garch_simulate(p, 500, rng);
  const auto r = garch_filter(p, path.y, p.unconditional_variance());
  for (double s2 : r.sigma2) CHECK(s2 >= p.omega - 1e-15);
}

TEST_CASE("likelihood dominance at the true parameters (n = 5000)") {
  Rng rng(32);
  const GarchParams truth{1e-5, 0.1, 0.85};
  const GarchPath path = garch_simulate(truth, 5000, rng);
  const double s0 = truth.unconditional_variance();
  const double ll_true = garch_filter(truth, path.y, s0).loglik;
  for (const double scale : {0.8, 1.2}) {
    const GarchParams off{truth.omega * scale, truth.alpha * scale, truth.beta};
    CHECK(ll_true > garch_filter(off, path.y, s0).loglik);
  }
}

TEST_CASE("fit recovers simulated parameters") {
  Rng rng(33);
  const GarchParams truth{1e-5, 0.1, 0.85};
  const GarchPath path = garch_simulate(truth, 5000, rng);
  const GarchFit fit = garch_fit(path.y);
  CHECK(std::fabs(fit.params.alpha + fit.params.beta - 0.95) <= 0.05);
  CHECK(fit.params.omega == doctest::Approx(truth.omega).epsilon(0.5));
  CHECK(fit.loglik >= fit.init_loglik);
}

TEST_CASE("fit on i.i.d. N(0,1) data finds no ARCH effect") {
  Rng rng(34);
  std::vector<double> y(5000);
  for (auto& v : y) v = rng.normal();
  const GarchFit fit = garch_fit(y);
  CHECK(fit.params.alpha <= 0.05);
  CHECK(fit.params.unconditional_variance() == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("degenerate inputs are rejected, tiny samples still fit") {
  const std::vector<double> zeros(100, 0.0);
  CHECK_THROWS_AS(garch_fit(zeros), FitFailure);
  CHECK_THROWS_AS(garch_fit(std::vector<double>{}), FitFailure);
  // the expanding protocol fits from the very first observation
  const std::vector<double> one{0.4};
  const GarchFit fit = garch_fit(one);
  CHECK(fit.params.valid());
  CHECK(fit.sigma0sq == doctest::Approx(0.16));
}

TEST_CASE("forecast recursion") {
  const GarchParams p{0.1, 0.2, 0.7};
  const std::vector<double> y{1.0};
  SUBCASE("one step by hand") {
    CHECK(garch_forecast(p, y, 1.0, 1) == doctest::Approx(1.0));
  }
  SUBCASE("long horizon reaches the unconditional variance") {
    CHECK(garch_forecast(p, y, 1.0, 10000) == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("h = 30 equals unrolling the recursion manually") {
    double s2 = p.omega + p.alpha * y.back() * y.back() + p.beta * 1.0;
    for (int k = 2; k <= 30; ++k) s2 = p.omega + (p.alpha + p.beta) * s2;
    CHECK(garch_forecast(p, y, 1.0, 30) == doctest::Approx(s2).epsilon(1e-14));
  }
  SUBCASE("forecasts approach the long-run variance monotonically") {
    const double lr = p.unconditional_variance();
    double prev = garch_forecast(p, y, 4.0, 1);
    bool above = prev >= lr;
    for (int h = 2; h <= 50; ++h) {
      const double cur = garch_forecast(p, y, 4.0, h);
      CHECK((above ? cur <= prev : cur >= prev));
      prev = cur;
    }
  }
}
