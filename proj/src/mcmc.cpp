#include "gcpv/mcmc.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "gcpv/errors.hpp"
#include "gcpv/kernel.hpp"

namespace gcpv {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

std::pair<Eigen::VectorXd, double> ess_step(const Eigen::VectorXd& f,
                                            const Eigen::MatrixXd& prior_chol,
                                            const LogLikFn& loglik, Rng& rng) {
  const auto n = f.size();
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
  const Eigen::VectorXd nu = prior_chol.triangularView<Eigen::Lower>() * z;

  const double threshold = loglik(f) + std::log(rng.uniform_open());

  double psi = rng.uniform(0.0, kTwoPi);
  double lo = psi - kTwoPi;
  double hi = psi;

  for (int shrink = 0; shrink < 1000; ++shrink) {
    const Eigen::VectorXd proposal = f * std::cos(psi) + nu * std::sin(psi);
    const double ll = loglik(proposal);
    if (ll > threshold) return {proposal, ll};
    if (psi < 0.0)
      lo = psi;
    else
      hi = psi;
    psi = rng.uniform(lo, hi);
  }
  throw ShrinkExhausted("ess_step: slice bracket failed to terminate");
}

SampleSet sample_posterior(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                           const LikelihoodModel& lik, int burn_in, int J,
                           std::uint64_t seed, int thin) {
  const auto n = y.size();
  const Eigen::MatrixXd prior_chol = cholesky(K).matrixL();
  thin = std::max(thin, 1);

  const LogLikFn loglik = [&](const Eigen::VectorXd& f) { return lik.evaluate(y, f).value; };

  Rng rng(seed);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  double ll = 0.0;
  for (int i = 0; i < burn_in; ++i) std::tie(f, ll) = ess_step(f, prior_chol, loglik, rng);

  SampleSet ss;
  ss.samples.resize(J, n);
  ss.logliks.resize(J);
  ss.rng_seed = seed;
  ss.burn_in = burn_in;
  ss.thin = thin;
  for (int j = 0; j < J; ++j) {
    for (int s = 0; s < thin; ++s) std::tie(f, ll) = ess_step(f, prior_chol, loglik, rng);
    ss.samples.row(j) = f.transpose();
    ss.logliks(j) = ll;
  }
  return ss;
}

Eigen::VectorXd predict_mixture(const SampleSet& ss, const Eigen::MatrixXd& K,
                                const Eigen::VectorXd& kstar, double kstarstar,
                                int n_draws, Rng& rng) {
  return predict_mixture(ss, cholesky(K), kstar, kstarstar, n_draws, rng);
}

Eigen::VectorXd predict_mixture(const SampleSet& ss,
                                const Eigen::LLT<Eigen::MatrixXd>& chol_k,
                                const Eigen::VectorXd& kstar, double kstarstar,
                                int n_draws, Rng& rng) {
  if (ss.count() < 1) throw LengthMismatch("predict_mixture: empty sample set");
  const Eigen::VectorXd alpha = chol_k.solve(kstar);
  // Conditional variance is sample independent.
  const double cond_var = std::max(kstarstar - kstar.dot(alpha), 0.0);
  const double cond_sd = std::sqrt(cond_var);
  const Eigen::VectorXd cond_means = ss.samples * alpha;

  Eigen::VectorXd draws(n_draws);
  const auto j_count = static_cast<std::uint64_t>(ss.count());
  for (int d = 0; d < n_draws; ++d) {
    const auto pick = static_cast<Eigen::Index>(rng.uniform_index(j_count));
    draws(d) = cond_means(pick) + cond_sd * rng.normal();
  }
  return draws;
}

void save_sample_set(const std::filesystem::path& path, const SampleSet& ss) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("save_sample_set: cannot open " + path.string());
  const std::uint64_t header[3] = {static_cast<std::uint64_t>(ss.dim()),
                                   static_cast<std::uint64_t>(ss.count()), ss.rng_seed};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  for (Eigen::Index i = 0; i < ss.count(); ++i) {
    const Eigen::VectorXd row = ss.samples.row(i);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(sizeof(double)) * row.size());
  }
  if (!out) throw Error("save_sample_set: write failed for " + path.string());
}

SampleSet load_sample_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("load_sample_set: cannot open " + path.string());
  std::uint64_t header[3];
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  if (!in) throw ParseError("load_sample_set: truncated header in " + path.string());

  SampleSet ss;
  const auto n = static_cast<Eigen::Index>(header[0]);
  const auto j = static_cast<Eigen::Index>(header[1]);
  ss.rng_seed = header[2];
  ss.samples.resize(j, n);
  ss.logliks = Eigen::VectorXd::Constant(j, std::numeric_limits<double>::quiet_NaN());
  Eigen::VectorXd row(n);
  for (Eigen::Index i = 0; i < j; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(sizeof(double)) * n);
    if (!in) throw ParseError("load_sample_set: truncated samples in " + path.string());
    ss.samples.row(i) = row.transpose();
  }
  return ss;
}

}  // namespace gcpv
