// Acceptance suite: runs the project's end-to-end correctness and replication
// criteria and prints one pass/fail line per criterion.
//
//   gcpv_acceptance             run everything
//   gcpv_acceptance --criterion 5
//   gcpv_acceptance --list
//
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gcpv/bench.hpp"
#include "gcpv/errors.hpp"
#include "gcpv/data.hpp"
#include "gcpv/garch.hpp"
#include "gcpv/kernel.hpp"
#include "gcpv/laplace.hpp"
#include "gcpv/likelihood.hpp"
#include "gcpv/mcmc.hpp"
#include "gcpv/rng.hpp"
#include "gcpv/train.hpp"
#include "gcpv/warp.hpp"
#include "../tests/oracles.hpp"

namespace {

using gcpv::Rng;

constexpr std::uint64_t kSeed = 1;  // default seed for every criterion

struct Check {
  bool ok;
  std::string detail;
};

std::vector<Check>& checks() {
  static std::vector<Check> v;
  return v;
}

template <typename T>
void expect(bool ok, const std::string& label, T observed) {
  std::ostringstream os;
  os << label << " = " << observed;
  checks().push_back({ok, os.str()});
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// ---------------------------------------------------------------------------
// 1. Conjugate exactness at n = 50, everything within 1e-6 relative, < 1 s.
bool criterion_1() {
  const double t0 = now_seconds();
  Rng rng(kSeed);
  const int n = 50;
  std::vector<double> times;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += 0.05 + 0.2 * rng.uniform();
    times.push_back(acc);
  }
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = 1.3 * rng.normal();

  const gcpv::KernelSpec spec{gcpv::KernelFamily::SquaredExponential, 1.2, 0.9};
  const Eigen::MatrixXd K = gcpv::kernel_matrix(spec, times);
  const double noise = 0.35;
  const gcpv::GaussianTestLikelihood lik(noise);

  const gcpv::LaplaceFit fit = gcpv::find_mode(K, y, lik);
  const auto oracle = oracles::exact_gp_regression(K, y, noise);

  const double mode_err = (fit.fhat - oracle.posterior_mean).norm() /
                          std::max(1.0, oracle.posterior_mean.norm());
  expect(mode_err < 1e-6, "relative mode error", mode_err);

  const double lml_err = std::fabs(fit.log_marginal - oracle.log_evidence) /
                         std::fabs(oracle.log_evidence);
  expect(lml_err < 1e-6, "relative log marginal error", lml_err);

  const Eigen::MatrixXd cov = gcpv::posterior_covariance(fit, K);
  const double cov_err = (cov - oracle.posterior_cov).norm() / oracle.posterior_cov.norm();
  expect(cov_err < 1e-6, "relative posterior covariance error", cov_err);

  double pred_err = 0.0;
  for (double tstar : {times[3], times[n - 1], acc + 0.5, acc + 3.0}) {
    const Eigen::VectorXd kstar = gcpv::cross_covariance(spec, times, tstar);
    const auto pg = gcpv::predict_latent(fit, K, kstar, spec.amplitude);
    const auto [m_ex, v_ex] = oracles::exact_gp_predict(K, y, noise, kstar, spec.amplitude);
    pred_err = std::max(pred_err, std::fabs(pg.mean - m_ex) / std::max(1.0, std::fabs(m_ex)));
    pred_err = std::max(pred_err, std::fabs(pg.variance - v_ex) / std::fabs(v_ex));
  }
  expect(pred_err < 1e-6, "relative predictive error", pred_err);

  const double elapsed = now_seconds() - t0;
  expect(elapsed < 1.0, "runtime seconds", elapsed);
  return true;
}

// ---------------------------------------------------------------------------
// 2. Eq. 17 within 0.5 nats of brute-force 2-D quadrature on a fixed n = 2
//    GCPV instance, < 10 s.
bool criterion_2() {
  const double t0 = now_seconds();
  const gcpv::KernelSpec spec{gcpv::KernelFamily::SquaredExponential, 1.0, 1.0};
  const std::vector<double> times{0.0, 0.5};
  const Eigen::MatrixXd K = gcpv::kernel_matrix(spec, times, 0.0);
  Eigen::VectorXd y(2);
  y << 0.8, -0.5;
  const gcpv::WarpKind warp = gcpv::WarpParams{{{1.0, 1.0, 0.0}}, 0.05};
  const gcpv::GcpvLikelihood lik(warp);

  const gcpv::LaplaceFit fit = gcpv::find_mode(K, y, lik);

  const Eigen::MatrixXd Kinv = K.inverse();
  const double logdet = std::log(K.determinant());
  const auto log_joint = [&](double f1, double f2) {
    Eigen::VectorXd f(2);
    f << f1, f2;
    return -0.5 * f.dot(Kinv * f) - 0.5 * logdet - std::log(2.0 * M_PI) +
           lik.evaluate(y, f).value;
  };
  const double truth = oracles::log_integral_2d(log_joint, -8.0, 8.0);
  const double gap = std::fabs(fit.log_marginal - truth);
  expect(gap < 0.5, "nats from quadrature truth", gap);

  const double elapsed = now_seconds() - t0;
  expect(elapsed < 10.0, "runtime seconds", elapsed);
  return true;
}

// ---------------------------------------------------------------------------
// 3. Newton behavior on TRIG with trained hyperparameters: converged within
//    10 iterations and a monotone safeguarded objective.
bool criterion_3() {
  const gcpv::TimeSeries ts = gcpv::simulate_trig(kSeed);
  const gcpv::TrainResult trained =
      gcpv::optimize(ts.times, ts.values, gcpv::ModelConfig{});
  expect(trained.fit.converged, "training converged", trained.fit.converged);

  const Eigen::MatrixXd K = gcpv::kernel_matrix(trained.kernel, ts.times);
  const Eigen::Map<const Eigen::VectorXd> y(ts.values.data(),
                                            static_cast<Eigen::Index>(ts.size()));
  std::vector<double> trace;
  gcpv::NewtonOptions opts;
  opts.objective_trace = &trace;
  const gcpv::LaplaceFit fit = gcpv::find_mode(K, y, gcpv::GcpvLikelihood{trained.warp}, opts);

  expect(fit.converged, "mode finding converged", fit.converged);
  expect(fit.iterations <= 10, "newton iterations", fit.iterations);
  bool monotone = true;
  for (std::size_t i = 1; i < trace.size(); ++i)
    if (trace[i] < trace[i - 1]) monotone = false;
  expect(monotone, "objective monotone over iterations", trace.size());
  return true;
}

// ---------------------------------------------------------------------------
// 4. MCMC correctness: prior reproduction, conjugate moments, agreement with
//    the Laplace mode on a TRIG subset; < 60 s total.
bool criterion_4() {
  const double t0 = now_seconds();

  {  // (a) constant likelihood reproduces the prior covariance within 5%
    class ConstantLik final : public gcpv::LikelihoodModel {
     public:
      gcpv::LikelihoodEval evaluate(const Eigen::VectorXd&,
                                    const Eigen::VectorXd& f) const override {
        gcpv::LikelihoodEval e;
        e.grad = Eigen::VectorXd::Zero(f.size());
        e.neg_hess_diag = Eigen::VectorXd::Zero(f.size());
        return e;
      }
    };
    const gcpv::KernelSpec spec;
    const std::vector<double> times{0.0, 0.5, 1.0};
    const Eigen::MatrixXd K = gcpv::kernel_matrix(spec, times, 0.0);
    const gcpv::SampleSet ss =
        gcpv::sample_posterior(K, Eigen::VectorXd::Zero(3), ConstantLik{}, 200, 100000, kSeed);
    const Eigen::MatrixXd centered = ss.samples.rowwise() - ss.samples.colwise().mean();
    const Eigen::MatrixXd cov = centered.transpose() * centered / double(ss.count());
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        worst = std::max(worst, std::fabs(cov(i, j) - K(i, j)) / std::fabs(K(i, j)));
    expect(worst < 0.05, "(a) worst relative covariance error", worst);
  }

  {  // (b) conjugate 1-D posterior N(1, 1/2) within 3 MC standard errors
    Eigen::MatrixXd K(1, 1);
    K << 1.0;
    Eigen::VectorXd y(1);
    y << 2.0;
    const gcpv::SampleSet ss =
        gcpv::sample_posterior(K, y, gcpv::GaussianTestLikelihood(1.0), 1000, 100000, kSeed + 1);
    const Eigen::VectorXd chain = ss.samples.col(0);
    const double se_mean = oracles::batch_means_se(chain);
    expect(std::fabs(chain.mean() - 1.0) <= 3.0 * se_mean, "(b) |mean - 1| / se",
           std::fabs(chain.mean() - 1.0) / se_mean);
    const Eigen::VectorXd sq = (chain.array() - chain.mean()).square();
    const double se_var = oracles::batch_means_se(sq);
    expect(std::fabs(sq.mean() - 0.5) <= 3.0 * se_var, "(b) |var - 0.5| / se",
           std::fabs(sq.mean() - 0.5) / se_var);
  }

  {  // (c) MCMC posterior mean vs Laplace mode on an n = 50 TRIG subset
    const gcpv::TimeSeries full = gcpv::simulate_trig(kSeed);
    const gcpv::TimeSeries ts = full.slice(0, 50);
    const gcpv::TrainResult trained =
        gcpv::optimize(ts.times, ts.values, gcpv::ModelConfig{});
    const Eigen::MatrixXd K = gcpv::kernel_matrix(trained.kernel, ts.times);
    const Eigen::Map<const Eigen::VectorXd> y(ts.values.data(), 50);
    const gcpv::GcpvLikelihood lik{trained.warp};
    const gcpv::LaplaceFit fit = gcpv::find_mode(K, y, lik);

    const gcpv::SampleSet ss = gcpv::sample_posterior(K, y, lik, 2000, 5000, kSeed + 2);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Eigen::VectorXd coord = ss.samples.col(i);
      const double se = oracles::batch_means_se(coord);
      worst = std::max(worst, std::fabs(coord.mean() - fit.fhat(i)) / se);
    }
    expect(worst <= 3.0, "(c) worst |mcmc mean - fhat| / se", worst);
  }

  const double elapsed = now_seconds() - t0;
  expect(elapsed < 60.0, "runtime seconds", elapsed);
  return true;
}

// ---------------------------------------------------------------------------
// Shared harness runs for the replication criteria.
gcpv::MseRow replication_row(gcpv::ModelBackend backend, const gcpv::TimeSeries& ts) {
  gcpv::ForecastTask task;
  task.model = backend;
  task.horizons = {1, 7, 30};
  task.windowing.kind = gcpv::Windowing::Kind::Expanding;
  task.seed = kSeed;
  return gcpv::run_forecast(task, ts);
}

// 5. TRIG replication: GCPV-LA beats GARCH on historical MSE with ratio >= 2;
//    the full expanding 1/7/30 run finishes in under 10 minutes.
bool criterion_5() {
  const double t0 = now_seconds();
  const gcpv::TimeSeries ts = gcpv::simulate_trig(kSeed);
  const gcpv::MseRow la = replication_row(gcpv::ModelBackend::GcpvLa, ts);
  const gcpv::MseRow garch = replication_row(gcpv::ModelBackend::Garch, ts);

  expect(std::isfinite(la.historical_mse), "GCPV-LA historical MSE", la.historical_mse);
  expect(std::isfinite(garch.historical_mse), "GARCH historical MSE", garch.historical_mse);
  const double ratio = garch.historical_mse / la.historical_mse;
  expect(ratio >= 2.0, "historical MSE ratio GARCH/GCPV-LA", ratio);
  expect(la.historical_mse < garch.historical_mse, "GCPV-LA beats GARCH",
         la.historical_mse);

  const double elapsed = now_seconds() - t0;
  expect(elapsed < 600.0, "runtime seconds", elapsed);
  return true;
}

// 6. JUMP replication: GCPV-LA beats GARCH on historical and 30-step MSE.
bool criterion_6() {
  const gcpv::TimeSeries ts = gcpv::simulate_jump(kSeed);
  const gcpv::MseRow la = replication_row(gcpv::ModelBackend::GcpvLa, ts);
  const gcpv::MseRow garch = replication_row(gcpv::ModelBackend::Garch, ts);

  expect(la.historical_mse < garch.historical_mse, "historical GCPV-LA vs GARCH",
         std::to_string(la.historical_mse) + " vs " + std::to_string(garch.historical_mse));
  expect(la.horizon_mse.at(30) < garch.horizon_mse.at(30), "30-step GCPV-LA vs GARCH",
         std::to_string(la.horizon_mse.at(30)) + " vs " +
             std::to_string(garch.horizon_mse.at(30)));
  return true;
}

// 7. The learned warp beats e^x on TRIG historical MSE.
bool criterion_7() {
  const gcpv::TimeSeries ts = gcpv::simulate_trig(kSeed);
  const std::vector<double> ref = [&] {
    std::vector<double> r(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
      r[i] = (*ts.true_sigma)[i] * (*ts.true_sigma)[i];
    return r;
  }();

  const auto historical_mse = [&](gcpv::ModelKind kind, gcpv::ModelBackend backend) {
    gcpv::ModelConfig config;
    config.kind = kind;
    const gcpv::TrainResult trained = gcpv::optimize(ts.times, ts.values, config);
    gcpv::TrainedModel model;
    model.kernel = trained.kernel;
    model.warp = trained.warp;
    model.config = config;
    const gcpv::PredictionSeries series =
        gcpv::run_historical(backend, ts, model, 10000, kSeed);
    std::vector<double> pred(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
      pred[i] = series.mean_sigma[i] * series.mean_sigma[i] + series.var_sigma[i];
    return gcpv::mse(pred, ref);
  };

  const double gcpv_mse = historical_mse(gcpv::ModelKind::Gcpv, gcpv::ModelBackend::GcpvLa);
  const double gpexp_mse = historical_mse(gcpv::ModelKind::GpExp, gcpv::ModelBackend::GpExp);
  expect(gcpv_mse < gpexp_mse, "historical GCPV-LA vs GP-EXP",
         std::to_string(gcpv_mse) + " vs " + std::to_string(gpexp_mse));
  return true;
}

// 8. GARCH home turf: on a simulated GARCH(1,1) series, rolling 1-step GCPV-LA
//    MSE is within 50% of GARCH's.
bool criterion_8() {
  Rng rng(kSeed);
  const gcpv::GarchParams params{0.0025, 0.10, 0.85};
  const gcpv::GarchPath path = gcpv::garch_simulate(params, 800, rng);
  gcpv::TimeSeries ts;
  ts.label = "GARCH-SIM";
  ts.true_sigma.emplace();
  for (int i = 0; i < 800; ++i) {
    ts.times.push_back(static_cast<double>(i));
    ts.values.push_back(path.y[static_cast<std::size_t>(i)]);
    ts.true_sigma->push_back(std::sqrt(path.sigma2[static_cast<std::size_t>(i)]));
  }

  gcpv::ForecastTask task;
  task.horizons = {1};
  task.windowing.kind = gcpv::Windowing::Kind::Rolling;
  task.windowing.window = 120;
  task.windowing.step = 7;
  task.seed = kSeed;

  task.model = gcpv::ModelBackend::GcpvLa;
  const gcpv::MseRow la = gcpv::run_forecast(task, ts);
  task.model = gcpv::ModelBackend::Garch;
  const gcpv::MseRow garch = gcpv::run_forecast(task, ts);

  expect(la.windows_failed == 0, "GCPV-LA failed windows", la.windows_failed);
  const double rel = la.horizon_mse.at(1) / garch.horizon_mse.at(1);
  expect(rel <= 1.5, "1-step MSE GCPV-LA / GARCH", rel);
  return true;
}

// 9. Property suites: the compact library-level re-run of the invariants the
//    unit suite checks exhaustively, plus CLI bit-reproducibility.
bool criterion_9() {
  {  // warp monotonicity + roundtrip
    Rng rng(kSeed);
    bool ok = true;
    for (int rep = 0; rep < 100; ++rep) {
      gcpv::WarpParams p;
      p.components = {{std::exp(rng.uniform(-1.5, 1.5)), std::exp(rng.uniform(-1.5, 1.0)),
                       rng.uniform(-2.0, 2.0)}};
      const gcpv::WarpKind w = p;
      const double x1 = rng.uniform(-18.0, 18.0);
      const double x2 = x1 + rng.uniform(1e-3, 5.0);
      if (!(gcpv::warp_eval(w, x1) < gcpv::warp_eval(w, x2))) ok = false;
      const double sigma = gcpv::warp_eval(w, x1);
      if (sigma > 0.0 && std::fabs(gcpv::warp_inverse(w, sigma) - x1) > 1e-8) ok = false;
    }
    expect(ok, "warp monotonicity and 1e-8 roundtrip", ok);
  }

  {  // likelihood derivative checks
    Rng rng(kSeed + 1);
    double worst_g = 0.0, worst_h = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      const gcpv::WarpKind w =
          gcpv::WarpParams{{{std::exp(rng.uniform(-1.0, 1.0)), 1.0, rng.uniform(-1.0, 1.0)}},
                           0.05};
      Eigen::VectorXd y(1), f(1);
      y << rng.uniform(-2.0, 2.0);
      f << rng.uniform(-1.0, 2.5);
      if (gcpv::warp_eval(w, f(0)) < 0.15) continue;
      const auto eval = gcpv::gcpv_loglik(y, f, w);
      const auto val = [&](double df) {
        Eigen::VectorXd fi = f;
        fi(0) += df;
        return gcpv::gcpv_loglik(y, fi, w).value;
      };
      const double h = 1e-5;
      const double grad_fd = (val(h) - val(-h)) / (2.0 * h);
      worst_g = std::max(worst_g, std::fabs(grad_fd - eval.grad(0)) /
                                      std::max(1.0, std::fabs(eval.grad(0))));
      const double h2 = 2e-4;
      const auto d2 = [&](double s) { return (val(s) - 2.0 * val(0) + val(-s)) / (s * s); };
      const double hess_fd = (4.0 * d2(0.5 * h2) - d2(h2)) / 3.0;
      worst_h = std::max(worst_h, std::fabs(-hess_fd - eval.neg_hess_diag(0)) /
                                      std::max(1.0, std::fabs(eval.neg_hess_diag(0))));
    }
    expect(worst_g < 1e-5, "worst gradient FD error", worst_g);
    expect(worst_h < 1e-4, "worst curvature FD error", worst_h);
  }

  {  // kernel PSD under jitter
    Rng rng(kSeed + 2);
    bool ok = true;
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> times(200);
      for (auto& t : times) t = rng.uniform(0.0, 5.0);
      times[0] = times[1];  // force a duplicate
      const gcpv::KernelSpec spec{gcpv::KernelFamily::SquaredExponential,
                                  0.5 + rng.uniform(), 0.1 + rng.uniform()};
      try {
        gcpv::cholesky(gcpv::kernel_matrix(spec, times));
      } catch (const gcpv::CholeskyFailure&) {
        ok = false;
      }
    }
    expect(ok, "jittered kernel matrices factorize", ok);
  }

  {  // marginal pdf normalization
    const gcpv::WarpKind w = gcpv::WarpParams{{{1.2, 0.8, 0.4}}, 0.03};
    double integral = 0.0;
    for (int k = -17; k < 17; ++k)
      integral += oracles::adaptive_simpson(
          [&](double a) { return gcpv::marginal_pdf(w, a); }, gcpv::warp_eval(w, 0.5 * k),
          gcpv::warp_eval(w, 0.5 * (k + 1)), 1e-9);
    expect(std::fabs(integral - 1.0) < 1e-4, "pdf integral", integral);
  }

  {  // no look-ahead: extending the future leaves earlier forecasts unchanged
    Rng rng(kSeed + 3);
    const gcpv::GarchPath path = gcpv::garch_simulate({0.02, 0.12, 0.82}, 100, rng);
    gcpv::TimeSeries base;
    for (int i = 0; i < 90; ++i) {
      base.times.push_back(i);
      base.values.push_back(path.y[static_cast<std::size_t>(i)]);
    }
    gcpv::TimeSeries longer = base;
    for (int i = 90; i < 100; ++i) {
      longer.times.push_back(i);
      longer.values.push_back(40.0);
    }
    gcpv::ForecastTask task;
    task.model = gcpv::ModelBackend::Garch;
    task.horizons = {1};
    task.seed = kSeed;
    task.keep_predictions = true;
    const gcpv::MseRow a = gcpv::run_forecast(task, base);
    const gcpv::MseRow b = gcpv::run_forecast(task, longer);
    std::map<std::size_t, double> from_longer;
    for (const auto& p : b.predictions)
      if (p.origin < 90) from_longer[p.target] = p.predicted_var;
    bool ok = !a.predictions.empty();
    for (const auto& p : a.predictions)
      if (!from_longer.count(p.target) || from_longer[p.target] != p.predicted_var) ok = false;
    expect(ok, "forecasts invariant to future perturbations", ok);
  }

  {  // bit-reproducibility of seeded commands (library level and CLI)
    const gcpv::TimeSeries a = gcpv::simulate_trig(7);
    const gcpv::TimeSeries b = gcpv::simulate_trig(7);
    expect(a.values == b.values, "simulate reproducible", true);

    const char* cli = std::getenv("GCPV_CLI");
    if (cli) {
      const std::string dir = "/tmp/gcpv_acceptance";
      int rc = std::system(("mkdir -p " + dir).c_str());
      const std::string base = std::string(cli) + " simulate jump --seed 5 --out " + dir;
      rc |= std::system((base + "/s1.csv").c_str());
      rc |= std::system((base + "/s2.csv").c_str());
      const int diff = std::system(("cmp -s " + dir + "/s1.csv " + dir + "/s2.csv").c_str());
      expect(rc == 0 && diff == 0, "CLI simulate byte-identical", diff);
    }
  }
  return true;
}

// 10. Scaling: n = 500 Laplace fit under 5 s, and fit time growing from
//     n = 250 to n = 500 consistently with O(n^3) within a factor of 2.
bool criterion_10() {
  const auto fit_time = [&](int n) {
    Rng rng(kSeed + static_cast<std::uint64_t>(n));
    std::vector<double> times;
    for (int i = 0; i < n; ++i) times.push_back(0.02 * i);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i)
      y(i) = (1.0 + 0.5 * std::sin(0.1 * i)) * rng.normal();
    const gcpv::KernelSpec spec{gcpv::KernelFamily::SquaredExponential, 1.0, 0.5};
    const Eigen::MatrixXd K = gcpv::kernel_matrix(spec, times);
    const gcpv::GcpvLikelihood lik{gcpv::WarpParams{{{1.0, 1.0, 0.0}}, 0.01}};

    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
      const double t0 = now_seconds();
      const gcpv::LaplaceFit fit = gcpv::find_mode(K, y, lik);
      const double dt = now_seconds() - t0;
      if (!fit.converged) return 1e300;
      best = std::min(best, dt);
    }
    return best;
  };

  const double t250 = fit_time(250);
  const double t500 = fit_time(500);
  expect(t500 < 5.0, "n=500 fit seconds", t500);
  const double ratio = t500 / t250;
  // n doubling under O(n^3) predicts 8x; accept within a factor of 2
  expect(ratio >= 4.0 && ratio <= 16.0, "scaling ratio t(500)/t(250)", ratio);
  return true;
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> v = {
      {1, "conjugate exactness (Laplace is exact for a Gaussian likelihood)", criterion_1},
      {2, "approximate log marginal within 0.5 nats of 2-D quadrature", criterion_2},
      {3, "Newton converges within 10 iterations on trained TRIG, monotonically", criterion_3},
      {4, "elliptical slice sampler correctness", criterion_4},
      {5, "TRIG replication: GCPV-LA vs GARCH historical MSE ratio >= 2", criterion_5},
      {6, "JUMP replication: GCPV-LA beats GARCH (historical and 30-step)", criterion_6},
      {7, "learned warp beats exponential warp on TRIG", criterion_7},
      {8, "GARCH home turf: GCPV-LA 1-step MSE within 50% of GARCH", criterion_8},
      {9, "property suites (warp, likelihood, kernel, pdf, look-ahead, seeds)", criterion_9},
      {10, "O(n^3) scaling and n=500 fit under 5 s", criterion_10},
  };
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--list") == 0) {
      for (const auto& c : criteria()) std::cout << c.id << ": " << c.name << '\n';
      return 0;
    }
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }

  int failures = 0;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    checks().clear();
    const double t0 = now_seconds();
    bool threw = false;
    std::string what;
    try {
      c.run();
    } catch (const std::exception& e) {
      threw = true;
      what = e.what();
    }
    const double elapsed = now_seconds() - t0;

    bool ok = !threw;
    for (const auto& chk : checks()) ok = ok && chk.ok;
    if (!ok) ++failures;

    std::printf("[%s] criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                elapsed);
    for (const auto& chk : checks())
      std::printf("       %s %s\n", chk.ok ? "ok  " : "BAD ", chk.detail.c_str());
    if (threw) std::printf("       BAD  exception: %s\n", what.c_str());
  }
  return failures;
}
