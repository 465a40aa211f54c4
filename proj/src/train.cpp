#include "gcpv/train.hpp"

#include <algorithm>
#include <cmath>

#include "gcpv/errors.hpp"

namespace gcpv {

namespace {
constexpr double kSentinel = -1e300;
}

HyperVector::HyperVector(Eigen::VectorXd values, Schema schema)
    : values_(std::move(values)), schema_(schema) {
  if (values_.size() != schema_.size())
    throw LengthMismatch("HyperVector: value length does not match schema");
}

HyperVector HyperVector::pack(const KernelSpec& kernel, const WarpKind& warp,
                              bool amplitude_trainable) {
  Schema schema;
  schema.family = kernel.family;
  schema.amplitude_trainable = amplitude_trainable;
  schema.fixed_amplitude = kernel.amplitude;
  schema.exponential_warp = !warp_is_parametric(warp);
  if (!schema.exponential_warp) {
    const auto& p = std::get<WarpParams>(warp);
    schema.warp_components = static_cast<int>(p.components.size());
    schema.floor = p.floor;
  } else {
    schema.warp_components = 0;
  }

  Eigen::VectorXd v(schema.size());
  Eigen::Index k = 0;
  v(k++) = std::log(kernel.lengthscale);
  if (amplitude_trainable) v(k++) = std::log(kernel.amplitude);
  if (!schema.exponential_warp) {
    for (const auto& comp : std::get<WarpParams>(warp).components) {
      v(k++) = std::log(comp.a);
      v(k++) = std::log(comp.b);
      v(k++) = comp.c;
    }
  }
  return HyperVector(std::move(v), schema);
}

std::pair<KernelSpec, WarpKind> HyperVector::unpack() const {
  KernelSpec kernel;
  kernel.family = schema_.family;
  Eigen::Index k = 0;
  kernel.lengthscale = std::exp(values_(k++));
  kernel.amplitude = schema_.amplitude_trainable ? std::exp(values_(k++))
                                                 : schema_.fixed_amplitude;

  if (schema_.exponential_warp) return {kernel, ExponentialWarp{}};

  WarpParams p;
  p.floor = schema_.floor;
  p.components.resize(static_cast<std::size_t>(schema_.warp_components));
  for (auto& comp : p.components) {
    comp.a = std::exp(values_(k++));
    comp.b = std::exp(values_(k++));
    comp.c = values_(k++);
  }
  return {kernel, WarpKind(std::move(p))};
}

namespace {

// Objective with a warm-started mode shared across nearby evaluations.
class LaplaceObjective {
 public:
  LaplaceObjective(std::span<const double> t, std::span<const double> y,
                   const HyperVector::Schema& schema, const TrainOptions& opts)
      : t_(t), schema_(schema), opts_(opts) {
    y_ = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  }

  double operator()(const Eigen::VectorXd& v) {
    ++evaluations_;
    try {
      const auto [kernel, warp] = HyperVector(v, schema_).unpack();
      if (!kernel.valid() || !std::isfinite(kernel.lengthscale) ||
          !std::isfinite(kernel.amplitude))
        return kSentinel;
      if (warp_is_parametric(warp) && !std::get<WarpParams>(warp).valid()) return kSentinel;

      const double jitter = opts_.jitter >= 0.0 ? opts_.jitter : default_jitter(kernel);
      const Eigen::MatrixXd K = kernel_matrix(kernel, t_, jitter);
      const GcpvLikelihood lik{warp};
      NewtonOptions newton = opts_.newton;
      if (warm_mode_.size() == y_.size()) newton.warm_start = warm_mode_;
      const LaplaceFit fit = find_mode(K, y_, lik, newton);
      if (!fit.converged || !std::isfinite(fit.log_marginal)) return kSentinel;
      warm_mode_ = fit.fhat;
      return fit.log_marginal;
    } catch (const Error&) {
      return kSentinel;
    }
  }

  long evaluations() const { return evaluations_; }

 private:
  std::span<const double> t_;
  Eigen::VectorXd y_;
  HyperVector::Schema schema_;
  TrainOptions opts_;
  Eigen::VectorXd warm_mode_;
  long evaluations_ = 0;
};

}  // namespace

double objective(const HyperVector& z, std::span<const double> t, std::span<const double> y,
                 const TrainOptions& opts) {
  LaplaceObjective obj(t, y, z.schema(), opts);
  return obj(z.values());
}

HyperVector default_init(std::span<const double> t, std::span<const double> y,
                         const ModelConfig& config) {
  const auto [tmin, tmax] = std::minmax_element(t.begin(), t.end());
  double span = (t.empty() ? 0.0 : *tmax - *tmin) / 10.0;
  if (!(span > 0.0)) span = 1.0;

  KernelSpec kernel;
  kernel.lengthscale = span;
  kernel.amplitude = 1.0;

  WarpKind warp = config.kind == ModelKind::GpExp
                      ? WarpKind(ExponentialWarp{})
                      : WarpKind(default_warp_init(y, config.warp_components));
  return HyperVector::pack(kernel, warp, config.amplitude_trainable());
}

TrainResult optimize(std::span<const double> t, std::span<const double> y,
                     const ModelConfig& config, std::optional<HyperVector> init,
                     const TrainOptions& opts) {
  if (y.size() < 2) throw DegenerateData("optimize: need at least 2 observations");
  if (std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; }))
    throw DegenerateData("optimize: observations are identically zero");

  const HyperVector z0 = init ? *init : default_init(t, y, config);

  LaplaceObjective shared(t, y, z0.schema(), opts);
  const ObjectiveFn negated = [&shared](const Eigen::VectorXd& v) { return -shared(v); };

  // Multi-start over lengthscale scalings; Eq. 17 is nonconvex in z.
  static constexpr double kScales[] = {1.0, 0.3, 3.0};
  const int starts = std::clamp(opts.multi_starts, 1, 3);

  OptimResult best;
  best.value = 1e301;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd v = z0.values();
    v(0) += std::log(kScales[s]);
    OptimResult r = minimize_cg(negated, std::move(v), opts.cg);
    if (r.value < best.value) best = std::move(r);
  }

  TrainResult out;
  out.z = z0.with_values(best.x);
  std::tie(out.kernel, out.warp) = out.z.unpack();
  out.evaluations = shared.evaluations();
  out.converged = best.converged && -best.value > kSentinel / 2.0;

  const double jitter = opts.jitter >= 0.0 ? opts.jitter : default_jitter(out.kernel);
  const Eigen::MatrixXd K = kernel_matrix(out.kernel, t, jitter);
  const Eigen::VectorXd yv =
      Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  out.fit = find_mode(K, yv, GcpvLikelihood{out.warp}, opts.newton);
  // Report the objective from this final cold fit so the returned value and
  // fit agree exactly; warm-started line-search values carry solver noise.
  out.objective = out.fit.converged ? out.fit.log_marginal : -best.value;
  return out;
}

}  // namespace gcpv
