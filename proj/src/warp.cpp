#include "gcpv/warp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcpv/errors.hpp"

namespace gcpv {

namespace {

// softplus(z) = log(1 + e^z) without overflow; equals z + log1p(e^{-z}) for
// large z, so softplus(z) ~ z once z > ~30.
double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z)));
}

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double parametric_eval(const WarpParams& p, double x) {
  double s = p.floor;
  for (const auto& comp : p.components) s += comp.a * softplus(comp.b * (x + comp.c));
  return s;
}

double parametric_deriv(const WarpParams& p, double x) {
  double s = 0.0;
  for (const auto& comp : p.components) s += comp.a * comp.b * logistic(comp.b * (x + comp.c));
  return s;
}

double parametric_deriv2(const WarpParams& p, double x) {
  double s = 0.0;
  for (const auto& comp : p.components) {
    const double lam = logistic(comp.b * (x + comp.c));
    s += comp.a * comp.b * comp.b * lam * (1.0 - lam);
  }
  return s;
}

}  // namespace

double warp_floor(const WarpKind& w) {
  if (const auto* p = std::get_if<WarpParams>(&w)) return p->floor;
  return 0.0;
}

double warp_eval(const WarpKind& w, double x) {
  if (const auto* p = std::get_if<WarpParams>(&w)) return parametric_eval(*p, x);
  return std::exp(x);
}

double warp_deriv(const WarpKind& w, double x) {
  if (const auto* p = std::get_if<WarpParams>(&w)) return parametric_deriv(*p, x);
  return std::exp(x);
}

double warp_deriv2(const WarpKind& w, double x) {
  if (const auto* p = std::get_if<WarpParams>(&w)) return parametric_deriv2(*p, x);
  return std::exp(x);
}

double warp_inverse(const WarpKind& w, double sigma) {
  if (!warp_is_parametric(w)) {
    if (!(sigma > 0.0)) throw OutOfRange("warp_inverse: sigma must be positive for g = exp");
    return std::log(sigma);
  }
  const auto& p = std::get<WarpParams>(w);
  if (!(sigma > p.floor))
    throw OutOfRange("warp_inverse: sigma <= floor has no preimage");

  // Bracket [lo, hi] with g(lo) <= sigma <= g(hi); g is monotone with known
  // asymptotes so doubling from [-1, 1] always succeeds for in-range targets.
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 200 && parametric_eval(p, lo) > sigma; ++i) lo *= 2.0;
  for (int i = 0; i < 200 && parametric_eval(p, hi) < sigma; ++i) hi *= 2.0;

  // Newton safeguarded by bisection, run until the bracket collapses in x so
  // the result is accurate even where g is exponentially flat (deep below the
  // linear regime the residual alone would accept any sufficiently small x).
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double gx = parametric_eval(p, x);
    const double err = gx - sigma;
    if (std::fabs(err) <= 1e-15 * sigma) return x;
    if (err > 0.0)
      hi = x;
    else
      lo = x;
    if (hi - lo <= 1e-13 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)))) break;
    const double slope = parametric_deriv(p, x);
    double next = x - err / slope;  // Newton
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return 0.5 * (lo + hi);
}

double marginal_cdf(const WarpKind& w, double a) {
  if (!(a > warp_floor(w))) return 0.0;
  const double x = warp_inverse(w, a);
  return 0.5 * std::erfc(-x / 1.4142135623730950488);
}

double marginal_pdf(const WarpKind& w, double a) {
  if (!(a > warp_floor(w))) return 0.0;
  const double x = warp_inverse(w, a);
  const double phi = std::exp(-0.5 * x * x) / 2.5066282746310005024;
  return phi / warp_deriv(w, x);
}

double default_floor(std::span<const double> y) {
  double smallest = std::numeric_limits<double>::infinity();
  for (double v : y)
    if (v != 0.0) smallest = std::min(smallest, std::fabs(v));
  return std::isfinite(smallest) ? 0.1 * smallest : 0.0;
}

WarpParams default_warp_init(std::span<const double> y, int components) {
  double mean = 0.0;
  for (double v : y) mean += v;
  const auto n = static_cast<double>(y.size());
  if (n > 0.0) mean /= n;
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  double scale = n > 1.0 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  if (!(scale > 0.0)) {
    for (double v : y) scale = std::max(scale, std::fabs(v));
    scale = std::max(scale, 1e-3);
  }

  WarpParams p;
  p.components.assign(static_cast<std::size_t>(std::max(components, 1)), WarpComponent{});
  for (auto& comp : p.components) comp.a = scale / static_cast<double>(p.components.size());
  p.floor = default_floor(y);
  return p;
}

}  // namespace gcpv
