#pragma once

#include <Eigen/Dense>
#include <functional>

namespace gcpv {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

struct CgOptions {
  int max_iterations = 200;
  double rel_tol = 1e-6;    // relative objective change
  double grad_tol = 1e-4;   // gradient infinity norm
  double fd_step = 1e-4;    // central-difference step per coordinate
};

struct OptimResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

/// Central finite-difference gradient with a fixed absolute step.
Eigen::VectorXd numeric_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x,
                                 double step, long* evaluations = nullptr);

/// Minimizes f by nonlinear conjugate gradient (Polak-Ribiere with restarts)
/// with numeric gradients and a backtracking Armijo line search. Deterministic;
/// returns the best point seen. Objective values >= 1e299 act as an infeasible
/// sentinel the line search backs away from.
OptimResult minimize_cg(const ObjectiveFn& f, Eigen::VectorXd x0, const CgOptions& opts = {});

struct NelderMeadOptions {
  int max_iterations = 800;
  double f_tol = 1e-10;        // simplex value spread
  double initial_step = 0.25;  // per-coordinate simplex offset
};

/// Derivative-free Nelder-Mead simplex minimizer.
OptimResult minimize_nelder_mead(const ObjectiveFn& f, Eigen::VectorXd x0,
                                 const NelderMeadOptions& opts = {});

}  // namespace gcpv
