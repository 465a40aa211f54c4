#include "gcpv/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace gcpv {

namespace {
constexpr double kInfeasible = 1e299;
}

Eigen::VectorXd numeric_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x,
                                 double step, long* evaluations) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + step;
    const double hi = f(probe);
    probe(i) = x(i) - step;
    const double lo = f(probe);
    probe(i) = x(i);
    g(i) = (hi - lo) / (2.0 * step);
  }
  if (evaluations) *evaluations += 2 * x.size();
  return g;
}

OptimResult minimize_cg(const ObjectiveFn& f, Eigen::VectorXd x0, const CgOptions& opts) {
  OptimResult res;
  Eigen::VectorXd x = std::move(x0);
  double fx = f(x);
  res.evaluations = 1;

  Eigen::VectorXd best_x = x;
  double best_f = fx;

  Eigen::VectorXd g = numeric_gradient(f, x, opts.fd_step, &res.evaluations);
  Eigen::VectorXd dir = -g;
  double alpha_init = 1.0;

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    res.iterations = iter;
    if (g.lpNorm<Eigen::Infinity>() < opts.grad_tol) {
      res.converged = true;
      break;
    }
    double slope = g.dot(dir);
    if (slope >= 0.0) {  // not a descent direction: restart on steepest descent
      dir = -g;
      slope = g.dot(dir);
      if (slope >= 0.0) {
        res.converged = true;  // zero gradient to working precision
        break;
      }
    }

    // Backtracking Armijo search along dir.
    double alpha = alpha_init;
    double f_new = kInfeasible;
    Eigen::VectorXd x_new;
    bool accepted = false;
    for (int h = 0; h < 40; ++h) {
      x_new = x + alpha * dir;
      f_new = f(x_new);
      ++res.evaluations;
      if (f_new < fx + 1e-4 * alpha * slope && f_new < kInfeasible) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      res.converged = true;  // no progress possible along any tried step
      break;
    }
    alpha_init = std::clamp(2.0 * alpha, 1e-8, 4.0);

    const double delta = fx - f_new;
    x = x_new;
    fx = f_new;
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }

    Eigen::VectorXd g_new = numeric_gradient(f, x, opts.fd_step, &res.evaluations);
    // Polak-Ribiere+ with automatic restart.
    const double denom = g.squaredNorm();
    double beta = denom > 0.0 ? g_new.dot(g_new - g) / denom : 0.0;
    beta = std::max(beta, 0.0);
    dir = -g_new + beta * dir;
    g = g_new;

    if (delta < opts.rel_tol * (std::fabs(fx) + 1e-12)) {
      res.converged = true;
      break;
    }
  }

  res.x = best_x;
  res.value = best_f;
  return res;
}

OptimResult minimize_nelder_mead(const ObjectiveFn& f, Eigen::VectorXd x0,
                                 const NelderMeadOptions& opts) {
  const auto n = x0.size();
  const auto m = static_cast<std::size_t>(n) + 1;

  std::vector<Eigen::VectorXd> pts(m, x0);
  std::vector<double> vals(m);
  for (std::size_t i = 1; i < m; ++i)
    pts[i](static_cast<Eigen::Index>(i - 1)) += opts.initial_step;
  OptimResult res;
  for (std::size_t i = 0; i < m; ++i) {
    vals[i] = f(pts[i]);
    ++res.evaluations;
  }

  std::vector<std::size_t> order(m);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  };

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    res.iterations = iter;
    sort_simplex();
    const std::size_t best = order[0], worst = order[m - 1], second = order[m - 2];
    if (std::fabs(vals[worst] - vals[best]) <=
        opts.f_tol * (std::fabs(vals[best]) + opts.f_tol)) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < m; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    auto eval = [&](const Eigen::VectorXd& p) {
      ++res.evaluations;
      return f(p);
    };

    const Eigen::VectorXd reflected = centroid + (centroid - pts[worst]);
    const double f_r = eval(reflected);
    if (f_r < vals[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double f_e = eval(expanded);
      if (f_e < f_r) {
        pts[worst] = expanded;
        vals[worst] = f_e;
      } else {
        pts[worst] = reflected;
        vals[worst] = f_r;
      }
      continue;
    }
    if (f_r < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = f_r;
      continue;
    }
    const Eigen::VectorXd contracted = centroid + 0.5 * (pts[worst] - centroid);
    const double f_c = eval(contracted);
    if (f_c < vals[worst]) {
      pts[worst] = contracted;
      vals[worst] = f_c;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t i = 0; i < m; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }

  sort_simplex();
  res.x = pts[order[0]];
  res.value = vals[order[0]];
  return res;
}

}  // namespace gcpv
