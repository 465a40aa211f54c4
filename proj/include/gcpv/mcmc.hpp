#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <utility>

#include "gcpv/likelihood.hpp"
#include "gcpv/rng.hpp"

namespace gcpv {

/// Posterior samples of the latent vector f, one per row.
struct SampleSet {
  Eigen::MatrixXd samples;  // J x n, row i is the i-th recorded state
  Eigen::VectorXd logliks;  // log p(y | f^i); NaN for sets loaded from disk
  std::uint64_t rng_seed = 0;
  int burn_in = 0;
  int thin = 1;

  Eigen::Index count() const { return samples.rows(); }
  Eigen::Index dim() const { return samples.cols(); }
};

using LogLikFn = std::function<double(const Eigen::VectorXd&)>;

/// One elliptical slice sampling transition. Draws an ellipse through the
/// current state and a prior draw nu = priorChol z, then shrinks the angle
/// bracket until the log likelihood clears a uniform slice threshold.
/// Rejection-free and parameterless; always terminates because the bracket
/// collapses onto the current state. Returns the new state and its log
/// likelihood. Throws ShrinkExhausted after 1000 shrinks (a defect signal).
std::pair<Eigen::VectorXd, double> ess_step(const Eigen::VectorXd& f,
                                            const Eigen::MatrixXd& prior_chol,
                                            const LogLikFn& loglik, Rng& rng);

/// Runs burn_in discarded transitions from f = 0, then records J states
/// (every thin-th transition). Fully determined by (inputs, seed).
SampleSet sample_posterior(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                           const LikelihoodModel& lik, int burn_in, int J,
                           std::uint64_t seed, int thin = 1);

/// Draws of f* from the J-component Gaussian mixture predictive: each draw
/// uniformly picks a posterior sample f^i and samples
/// N(k*' K^{-1} f^i, k** - k*' K^{-1} k*). The K solve is done once per call.
Eigen::VectorXd predict_mixture(const SampleSet& ss, const Eigen::MatrixXd& K,
                                const Eigen::VectorXd& kstar, double kstarstar,
                                int n_draws, Rng& rng);

/// As above with K prefactored, for callers predicting at many test points.
Eigen::VectorXd predict_mixture(const SampleSet& ss,
                                const Eigen::LLT<Eigen::MatrixXd>& chol_k,
                                const Eigen::VectorXd& kstar, double kstarstar,
                                int n_draws, Rng& rng);

/// Binary persistence: header (n, J, seed as u64) then row-major doubles.
void save_sample_set(const std::filesystem::path& path, const SampleSet& ss);
SampleSet load_sample_set(const std::filesystem::path& path);

}  // namespace gcpv
