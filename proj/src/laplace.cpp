#include "gcpv/laplace.hpp"

#include <cmath>

#include "gcpv/errors.hpp"
#include "gcpv/kernel.hpp"

namespace gcpv {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

struct BFactor {
  Eigen::VectorXd sqrt_w;
  Eigen::LLT<Eigen::MatrixXd> chol;
};

// B = I + W^{1/2} K W^{1/2} for the clipped diagonal. W >= 0 makes B's
// eigenvalues >= 1, so a factorization failure here is a defect, not data.
BFactor factor_b(const Eigen::MatrixXd& K, const Eigen::VectorXd& wtilde) {
  BFactor out;
  out.sqrt_w = wtilde.cwiseSqrt();
  Eigen::MatrixXd b = out.sqrt_w.asDiagonal() * K * out.sqrt_w.asDiagonal();
  b.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt(b);
  if (llt.info() != Eigen::Success)
    throw CholeskyFailure("find_mode: B = I + W^1/2 K W^1/2 failed to factorize");
  out.chol = std::move(llt);
  return out;
}

Eigen::VectorXd apply_q(const BFactor& b, const Eigen::VectorXd& v) {
  return b.sqrt_w.cwiseProduct(b.chol.solve(b.sqrt_w.cwiseProduct(v)));
}

}  // namespace

LaplaceFit find_mode(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                     const LikelihoodModel& lik, const NewtonOptions& opts) {
  if (K.rows() != K.cols() || K.rows() != y.size())
    throw LengthMismatch("find_mode: K and y dimensions disagree");
  const auto n = y.size();

  Eigen::LLT<Eigen::MatrixXd> chol_k = cholesky(K);
  const double log_det_k =
      2.0 * chol_k.matrixLLT().diagonal().array().log().sum();
  const double prior_const = -0.5 * log_det_k - 0.5 * static_cast<double>(n) * kLog2Pi;

  // All iterates live in the range of K as f = K a, so the prior quadratic
  // f' K^{-1} f is just a' f.
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  if (opts.warm_start && opts.warm_start->size() == n) {
    a = chol_k.solve(*opts.warm_start);
    f = K * a;
  }

  LikelihoodEval eval = lik.evaluate(y, f);
  double s = eval.value - 0.5 * a.dot(f) + prior_const;
  if (opts.objective_trace) opts.objective_trace->push_back(s);

  LaplaceFit fit;
  fit.log_det_k = log_det_k;
  fit.converged = false;
  int iter = 0;

  for (iter = 1; iter <= opts.max_iterations; ++iter) {
    const Eigen::VectorXd wtilde = eval.neg_hess_diag.cwiseMax(0.0);
    BFactor b_factor = factor_b(K, wtilde);

    const Eigen::VectorXd b = wtilde.cwiseProduct(f) + eval.grad;
    const Eigen::VectorXd a_new = b - apply_q(b_factor, K * b);
    const Eigen::VectorXd f_new = K * a_new;

    // Step-halving safeguard: accept only non-decreasing objective values.
    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd a_c, f_c;
    LikelihoodEval eval_c;
    double s_c = s;
    for (int h = 0; h <= opts.max_step_halvings; ++h) {
      a_c = a + step * (a_new - a);
      f_c = f + step * (f_new - f);
      eval_c = lik.evaluate(y, f_c);
      s_c = eval_c.value - 0.5 * a_c.dot(f_c) + prior_const;
      if (std::isfinite(s_c) && s_c >= s) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // stationary to within line-search resolution

    const double delta = s_c - s;
    a = a_c;
    f = f_c;
    eval = eval_c;
    s = s_c;
    if (opts.objective_trace) opts.objective_trace->push_back(s);

    const double grad_norm = (eval.grad - a).lpNorm<Eigen::Infinity>();
    if (delta < opts.objective_tol || grad_norm < opts.grad_tol) {
      fit.converged = true;
      break;
    }
  }

  // Objective deltas can stall under clipping; fall back to the gradient test.
  if (!fit.converged &&
      (eval.grad - a).lpNorm<Eigen::Infinity>() < opts.grad_tol)
    fit.converged = true;

  fit.iterations = std::min(iter, opts.max_iterations);

  // Final quantities at the mode, with W recomputed there.
  fit.fhat = f;
  fit.a_fhat = a;
  fit.grad_at_mode = eval.grad;
  fit.loglik_at_mode = eval.value;
  fit.wtilde = eval.neg_hess_diag.cwiseMax(0.0);
  BFactor b_final = factor_b(K, fit.wtilde);
  fit.chol_b = b_final.chol.matrixL();
  fit.log_marginal = -0.5 * fit.fhat.dot(fit.a_fhat) + fit.loglik_at_mode -
                     fit.chol_b.diagonal().array().log().sum();
  return fit;
}

double log_marginal(const LaplaceFit& fit, const Eigen::VectorXd& y,
                    const LikelihoodModel& lik, bool allow_unconverged) {
  if (!fit.converged && !allow_unconverged)
    throw NotConverged("log_marginal: Laplace fit did not converge");
  const LikelihoodEval eval = lik.evaluate(y, fit.fhat);
  return -0.5 * fit.fhat.dot(fit.a_fhat) + eval.value -
         fit.chol_b.diagonal().array().log().sum();
}

PredictiveGaussian predict_latent(const LaplaceFit& fit, const Eigen::MatrixXd& K,
                                  const Eigen::VectorXd& kstar, double kstarstar) {
  if (!fit.converged)
    throw NotConverged("predict_latent: Laplace fit did not converge");
  if (kstar.size() != K.rows() || kstar.size() != fit.fhat.size())
    throw LengthMismatch("predict_latent: kstar length does not match the fit");

  PredictiveGaussian out;
  out.mean = kstar.dot(fit.grad_at_mode);
  const Eigen::VectorXd v = fit.chol_b.triangularView<Eigen::Lower>().solve(
      fit.wtilde.cwiseSqrt().cwiseProduct(kstar));
  out.variance = kstarstar - v.squaredNorm();
  if (out.variance < 1e-12) {
    out.variance = 1e-12;
    out.clamped = true;
  }
  return out;
}

Eigen::MatrixXd posterior_covariance(const LaplaceFit& fit, const Eigen::MatrixXd& K) {
  if (!fit.converged)
    throw NotConverged("posterior_covariance: Laplace fit did not converge");
  const Eigen::MatrixXd scaled = fit.wtilde.cwiseSqrt().asDiagonal() * K;
  const Eigen::MatrixXd v = fit.chol_b.triangularView<Eigen::Lower>().solve(scaled);
  Eigen::MatrixXd cov = K - v.transpose() * v;
  return 0.5 * (cov + cov.transpose());
}

}  // namespace gcpv
