#include "gcpv/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "gcpv/errors.hpp"
#include "gcpv/format.hpp"
#include "gcpv/garch.hpp"
#include "gcpv/kernel.hpp"
#include "gcpv/laplace.hpp"
#include "gcpv/likelihood.hpp"
#include "gcpv/log.hpp"
#include "gcpv/mcmc.hpp"
#include "gcpv/rng.hpp"

namespace gcpv {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp<int>(workers, 1, static_cast<int>(count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

/// Summary of predictive sigma draws at one point.
struct SigmaStats {
  double mean_sigma = 0.0;
  double var_sigma = 0.0;
  double mean_sigma2 = 0.0;  // the predicted variance used for MSE
  double lo95 = 0.0;
  double hi95 = 0.0;
  bool clamped = false;
};

SigmaStats summarize_sigma_draws(std::vector<double>& sigma) {
  SigmaStats s;
  const auto n = sigma.size();
  double sum = 0.0, sum2 = 0.0;
  for (double v : sigma) {
    sum += v;
    sum2 += v * v;
  }
  s.mean_sigma = sum / static_cast<double>(n);
  s.mean_sigma2 = sum2 / static_cast<double>(n);
  s.var_sigma = std::max(s.mean_sigma2 - s.mean_sigma * s.mean_sigma, 0.0);
  std::sort(sigma.begin(), sigma.end());
  const auto idx = [&](double q) {
    return static_cast<std::size_t>(std::llround(q * static_cast<double>(n - 1)));
  };
  s.lo95 = sigma[idx(0.025)];
  s.hi95 = sigma[idx(0.975)];
  return s;
}

SigmaStats sigma_stats_from_gaussian(const PredictiveGaussian& pg, const WarpKind& warp,
                                     int draws, Rng& rng) {
  const double sd = std::sqrt(pg.variance);
  std::vector<double> sigma(static_cast<std::size_t>(draws));
  for (auto& v : sigma) v = warp_eval(warp, pg.mean + sd * rng.normal());
  SigmaStats s = summarize_sigma_draws(sigma);
  s.clamped = pg.clamped;
  return s;
}

SigmaStats sigma_stats_from_fdraws(const Eigen::VectorXd& fdraws, const WarpKind& warp) {
  std::vector<double> sigma(static_cast<std::size_t>(fdraws.size()));
  for (Eigen::Index i = 0; i < fdraws.size(); ++i)
    sigma[static_cast<std::size_t>(i)] = warp_eval(warp, fdraws(i));
  return summarize_sigma_draws(sigma);
}

std::vector<double> reference_variance(const TimeSeries& ts) {
  std::vector<double> ref(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    ref[i] = ts.true_sigma ? (*ts.true_sigma)[i] * (*ts.true_sigma)[i]
                           : ts.values[i] * ts.values[i];
  return ref;
}

bool is_gcpv_family(ModelBackend b) { return b != ModelBackend::Garch; }

ModelConfig config_for(ModelBackend b) {
  ModelConfig c;
  c.kind = b == ModelBackend::GpExp ? ModelKind::GpExp : ModelKind::Gcpv;
  return c;
}

/// Hyperparameters for a GCPV-family backend on a training slice: trained
/// when the slice is long enough, the data-scale initialization otherwise
/// (the paper's expanding protocol starts from a single observation).
std::pair<KernelSpec, WarpKind> train_slice(ModelBackend backend, const TimeSeries& slice,
                                            const TrainOptions& opts) {
  const ModelConfig config = config_for(backend);
  if (slice.size() < 2) return default_init(slice.times, slice.values, config).unpack();
  TrainResult r = optimize(slice.times, slice.values, config, {}, opts);
  return {r.kernel, r.warp};
}

/// A GCPV predictive conditioned on one data slice with fixed hyperparameters.
class GcpvConditioner {
 public:
  GcpvConditioner(ModelBackend backend, const TimeSeries& slice, const KernelSpec& kernel,
                  const WarpKind& warp, const NewtonOptions& newton, int mcmc_burn_in,
                  int mcmc_samples, std::uint64_t chain_seed)
      : backend_(backend), slice_(slice), kernel_(kernel), warp_(warp), lik_(warp) {
    K_ = kernel_matrix(kernel_, slice_.times);
    const Eigen::Map<const Eigen::VectorXd> y(slice_.values.data(),
                                              static_cast<Eigen::Index>(slice_.values.size()));
    if (backend_ == ModelBackend::GcpvMcmc) {
      samples_ = sample_posterior(K_, y, lik_, mcmc_burn_in, mcmc_samples, chain_seed);
      chol_k_.emplace(cholesky(K_));
    } else {
      fit_ = find_mode(K_, y, lik_, newton);
      if (!fit_.converged) throw NotConverged("mode refit did not converge");
    }
  }

  SigmaStats predict_sigma(double tstar, int draws, Rng& rng) const {
    const Eigen::VectorXd kstar = cross_covariance(kernel_, slice_.times, tstar);
    if (backend_ == ModelBackend::GcpvMcmc) {
      const Eigen::VectorXd fdraws =
          predict_mixture(samples_, *chol_k_, kstar, kernel_.amplitude, draws, rng);
      return sigma_stats_from_fdraws(fdraws, warp_);
    }
    const PredictiveGaussian pg = predict_latent(fit_, K_, kstar, kernel_.amplitude);
    return sigma_stats_from_gaussian(pg, warp_, draws, rng);
  }

 private:
  ModelBackend backend_;
  TimeSeries slice_;
  KernelSpec kernel_;
  WarpKind warp_;
  GcpvLikelihood lik_;
  Eigen::MatrixXd K_;
  LaplaceFit fit_;
  SampleSet samples_;
  std::optional<Eigen::LLT<Eigen::MatrixXd>> chol_k_;
};

struct OriginPrediction {
  std::size_t origin = 0;
  std::size_t target = 0;
  int horizon = 0;
  double predicted_var = 0.0;
};

struct UnitResult {
  bool attempted = false;
  bool failed = false;
  std::string error;
  std::vector<OriginPrediction> predictions;
  long clamps = 0;
  // rolling only: in-sample historical MSE over the unit's training window
  double historical_mse = kNaN;
};

}  // namespace

std::string backend_name(ModelBackend backend) {
  switch (backend) {
    case ModelBackend::GcpvLa: return "gcpv-la";
    case ModelBackend::GcpvMcmc: return "gcpv-mcmc";
    case ModelBackend::GpExp: return "gp-exp";
    case ModelBackend::Garch: return "garch";
  }
  return "?";
}

std::optional<ModelBackend> backend_from_name(const std::string& name) {
  if (name == "gcpv-la") return ModelBackend::GcpvLa;
  if (name == "gcpv-mcmc") return ModelBackend::GcpvMcmc;
  if (name == "gp-exp") return ModelBackend::GpExp;
  if (name == "garch") return ModelBackend::Garch;
  return std::nullopt;
}

namespace {

std::string backend_display(const std::string& name) {
  if (name == "gcpv-la") return "GCPV (LA)";
  if (name == "gcpv-mcmc") return "GCPV (MCMC)";
  if (name == "gp-exp") return "GP-EXP";
  if (name == "garch") return "GARCH";
  return name;
}

}  // namespace

double mse(std::span<const double> predicted_var, std::span<const double> reference_var) {
  if (predicted_var.size() != reference_var.size())
    throw LengthMismatch("mse: vector lengths differ");
  if (predicted_var.empty()) throw LengthMismatch("mse: empty vectors");
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted_var.size(); ++i) {
    const double d = predicted_var[i] - reference_var[i];
    sum += d * d;
  }
  return sum / static_cast<double>(predicted_var.size());
}

namespace {

/// Expanding-protocol segment: origins sharing one hyperparameter training.
struct Segment {
  std::size_t train_end = 0;  // hyperparameters trained on [0, train_end)
  std::size_t first_origin = 0;
  std::size_t last_origin = 0;  // inclusive
};

UnitResult run_expanding_segment(const ForecastTask& task, const TimeSeries& ts,
                                 const Segment& seg, const std::vector<double>& ref) {
  UnitResult out;
  out.attempted = true;
  const std::size_t n = ts.size();
  const Rng root(task.seed);

  try {
    KernelSpec kernel;
    WarpKind warp = WarpParams{};
    GarchFit garch;
    if (task.model == ModelBackend::Garch) {
      const TimeSeries train = ts.slice(0, seg.train_end);
      garch = garch_fit(train.values);
    } else {
      std::tie(kernel, warp) = train_slice(task.model, ts.slice(0, seg.train_end), task.train);
    }

    for (std::size_t origin = seg.first_origin; origin <= seg.last_origin; ++origin) {
      Rng origin_rng = root.split(origin);
      const TimeSeries cond = ts.slice(0, origin);

      if (task.model == ModelBackend::Garch) {
        const auto filt = garch_filter(garch.params, cond.values, garch.sigma0sq);
        for (int h : task.horizons) {
          const std::size_t target = origin + static_cast<std::size_t>(h) - 1;
          if (target >= n) continue;
          const double pred =
              garch_forecast(garch.params, cond.values, filt.sigma2.back(), h);
          out.predictions.push_back({origin, target, h, pred});
        }
      } else {
        const std::uint64_t chain_seed = origin_rng.next_u64();
        const GcpvConditioner cond_model(task.model, cond, kernel, warp, task.train.newton,
                                         task.mcmc_burn_in, task.mcmc_samples, chain_seed);
        for (int h : task.horizons) {
          const std::size_t target = origin + static_cast<std::size_t>(h) - 1;
          if (target >= n) continue;
          const SigmaStats s = cond_model.predict_sigma(ts.times[target], task.draws, origin_rng);
          if (s.clamped) ++out.clamps;
          out.predictions.push_back({origin, target, h, s.mean_sigma2});
        }
      }
    }
  } catch (const Error& e) {
    out.failed = true;
    out.error = e.what();
  }
  (void)ref;
  return out;
}

UnitResult run_rolling_window(const ForecastTask& task, const TimeSeries& ts,
                              const Window& win, std::size_t window_index,
                              const std::vector<double>& ref) {
  UnitResult out;
  out.attempted = true;
  const std::size_t n = ts.size();
  const Rng root(task.seed);
  Rng rng = root.split(window_index);

  try {
    const TimeSeries train = ts.slice(win.begin, win.end);
    const std::size_t next_origin = std::min(win.forecast_origin + task.windowing.step, n);

    if (task.model == ModelBackend::Garch) {
      const GarchFit garch = garch_fit(train.values);
      // In-sample historical over the training window.
      const auto filt = garch_filter(garch.params, train.values, garch.sigma0sq);
      out.historical_mse = mse(filt.sigma2,
                               std::span<const double>(ref).subspan(win.begin, win.end - win.begin));
      for (std::size_t day = win.forecast_origin; day < next_origin; ++day) {
        const TimeSeries cond = ts.slice(day - task.windowing.window, day);
        const auto cond_filt = garch_filter(garch.params, cond.values, garch.sigma0sq);
        for (int h : task.horizons) {
          const std::size_t target = day + static_cast<std::size_t>(h) - 1;
          if (target >= n) continue;
          out.predictions.push_back(
              {day, target, h, garch_forecast(garch.params, cond.values, cond_filt.sigma2.back(), h)});
        }
      }
      return out;
    }

    KernelSpec kernel;
    WarpKind warp = WarpParams{};
    std::tie(kernel, warp) = train_slice(task.model, train, task.train);

    {  // In-sample historical over the training window.
      const std::uint64_t chain_seed = rng.next_u64();
      const GcpvConditioner hist(task.model, train, kernel, warp, task.train.newton,
                                 task.mcmc_burn_in, task.mcmc_samples, chain_seed);
      std::vector<double> pred(train.size());
      for (std::size_t i = 0; i < train.size(); ++i) {
        const SigmaStats s = hist.predict_sigma(train.times[i], task.draws, rng);
        if (s.clamped) ++out.clamps;
        pred[i] = s.mean_sigma2;
      }
      out.historical_mse =
          mse(pred, std::span<const double>(ref).subspan(win.begin, win.end - win.begin));
    }

    for (std::size_t day = win.forecast_origin; day < next_origin; ++day) {
      const TimeSeries cond = ts.slice(day - task.windowing.window, day);
      const std::uint64_t chain_seed = rng.next_u64();
      const GcpvConditioner cond_model(task.model, cond, kernel, warp, task.train.newton,
                                       task.mcmc_burn_in, task.mcmc_samples, chain_seed);
      for (int h : task.horizons) {
        const std::size_t target = day + static_cast<std::size_t>(h) - 1;
        if (target >= n) continue;
        const SigmaStats s = cond_model.predict_sigma(ts.times[target], task.draws, rng);
        if (s.clamped) ++out.clamps;
        out.predictions.push_back({day, target, h, s.mean_sigma2});
      }
    }
  } catch (const Error& e) {
    out.failed = true;
    out.error = e.what();
  }
  return out;
}

/// Historical row entry for the expanding protocol: one full-series training.
double expanding_historical(const ForecastTask& task, const TimeSeries& ts,
                            const std::vector<double>& ref, long* clamps, bool* failed) {
  try {
    if (task.model == ModelBackend::Garch) {
      const GarchFit garch = garch_fit(ts.values);
      const auto filt = garch_filter(garch.params, ts.values, garch.sigma0sq);
      return mse(filt.sigma2, ref);
    }
    KernelSpec kernel;
    WarpKind warp = WarpParams{};
    std::tie(kernel, warp) = train_slice(task.model, ts, task.train);
    Rng rng = Rng(task.seed).split(0x9157u);
    const std::uint64_t chain_seed = rng.next_u64();
    const GcpvConditioner cond(task.model, ts, kernel, warp, task.train.newton,
                               task.mcmc_burn_in, task.mcmc_samples, chain_seed);
    std::vector<double> pred(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const SigmaStats s = cond.predict_sigma(ts.times[i], task.draws, rng);
      if (s.clamped) ++*clamps;
      pred[i] = s.mean_sigma2;
    }
    return mse(pred, ref);
  } catch (const Error& e) {
    log_warn(std::string("historical prediction failed: ") + e.what());
    *failed = true;
    return kNaN;
  }
}

}  // namespace

MseRow run_forecast(const ForecastTask& task, const TimeSeries& ts) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> ref = reference_variance(ts);
  const std::size_t n = ts.size();

  MseRow row;
  row.dataset = ts.label;
  row.model = backend_name(task.model);
  row.n = n;
  row.seed = task.seed;
  row.historical_in_sample = task.windowing.kind == Windowing::Kind::Rolling;

  std::vector<UnitResult> results;

  if (task.windowing.kind == Windowing::Kind::Expanding) {
    const std::size_t first = std::max<std::size_t>(task.windowing.min_train, 1);
    std::vector<Segment> segments;
    const std::size_t cadence = std::max<std::size_t>(task.windowing.retrain_every, 1);
    for (std::size_t start = first; start < n; start += cadence)
      segments.push_back(Segment{start, start, std::min(start + cadence - 1, n - 1)});

    results.resize(segments.size());
    parallel_for(segments.size(), task.jobs, [&](std::size_t i) {
      results[i] = run_expanding_segment(task, ts, segments[i], ref);
    });
    // A unit is an origin here; spread segment outcomes over their origins.
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const std::size_t origins = segments[i].last_origin - segments[i].first_origin + 1;
      row.windows_total += origins;
      if (results[i].failed) {
        row.windows_failed += origins;
        log_info("segment at prefix " + std::to_string(segments[i].train_end) + " (" +
                 row.model + "): " + results[i].error);
      }
    }
  } else {
    const auto windows = rolling_windows(ts, task.windowing.window, task.windowing.step);
    results.resize(windows.size());
    parallel_for(windows.size(), task.jobs, [&](std::size_t i) {
      results[i] = run_rolling_window(task, ts, windows[i], i, ref);
    });
    row.windows_total = windows.size();
    for (const auto& r : results)
      if (r.failed) ++row.windows_failed;
  }

  // Pool predictions per horizon.
  std::map<int, double> sum_sq;
  std::map<int, std::size_t> count;
  for (const auto& r : results) {
    if (r.failed) continue;
    row.variance_clamps += r.clamps;
    for (const auto& p : r.predictions) {
      const double d = p.predicted_var - ref[p.target];
      sum_sq[p.horizon] += d * d;
      ++count[p.horizon];
      if (task.keep_predictions)
        row.predictions.push_back({p.origin, p.target, p.horizon, p.predicted_var});
    }
  }
  for (int h : task.horizons) {
    row.horizon_count[h] = count.count(h) ? count[h] : 0;
    row.horizon_mse[h] = row.horizon_count[h] > 0
                             ? sum_sq[h] / static_cast<double>(row.horizon_count[h])
                             : kNaN;
  }

  if (task.windowing.kind == Windowing::Kind::Expanding) {
    bool hist_failed = false;
    row.historical_mse = expanding_historical(task, ts, ref, &row.variance_clamps, &hist_failed);
    if (hist_failed) ++row.windows_failed, ++row.windows_total;
  } else {
    double sum = 0.0;
    std::size_t k = 0;
    for (const auto& r : results)
      if (!r.failed && std::isfinite(r.historical_mse)) {
        sum += r.historical_mse;
        ++k;
      }
    row.historical_mse = k > 0 ? sum / static_cast<double>(k) : kNaN;
  }

  row.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

PredictionSeries run_historical(ModelBackend backend, const TimeSeries& ts,
                                const TrainedModel& model, int draws, std::uint64_t seed,
                                int mcmc_burn_in, int mcmc_samples) {
  if (!is_gcpv_family(backend))
    throw Error("run_historical: GARCH has no latent predictive; use run_forecast");

  Rng rng(seed);
  const std::uint64_t chain_seed = rng.next_u64();
  NewtonOptions newton;
  const GcpvConditioner cond(backend, ts, model.kernel, model.warp, newton, mcmc_burn_in,
                             mcmc_samples, chain_seed);

  PredictionSeries out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const SigmaStats s = cond.predict_sigma(ts.times[i], draws, rng);
    out.t.push_back(ts.times[i]);
    out.mean_sigma.push_back(s.mean_sigma);
    out.var_sigma.push_back(s.var_sigma);
    out.lo95.push_back(s.lo95);
    out.hi95.push_back(s.hi95);
    out.reference.push_back(ts.true_sigma ? (*ts.true_sigma)[i] : std::fabs(ts.values[i]));
  }
  return out;
}

std::string PredictionSeries::to_csv() const {
  std::string out = "t,mean_sigma,var_sigma,lo95,hi95,reference\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += fmt_double(t[i]) + ',' + fmt_double(mean_sigma[i]) + ',' + fmt_double(var_sigma[i]) +
           ',' + fmt_double(lo95[i]) + ',' + fmt_double(hi95[i]) + ',' + fmt_double(reference[i]) +
           '\n';
  }
  return out;
}

std::string MseReport::to_json() const {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json jr;
    jr["dataset"] = r.dataset;
    jr["model"] = r.model;
    jr["historical_mse"] = std::isfinite(r.historical_mse) ? nlohmann::json(r.historical_mse)
                                                           : nlohmann::json(nullptr);
    jr["historical_in_sample"] = r.historical_in_sample;
    nlohmann::json jh = nlohmann::json::object(), jc = nlohmann::json::object();
    for (const auto& [h, v] : r.horizon_mse) {
      jh[std::to_string(h)] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
      jc[std::to_string(h)] = r.horizon_count.at(h);
    }
    jr["horizon_mse"] = jh;
    jr["horizon_count"] = jc;
    jr["n"] = r.n;
    jr["seed"] = r.seed;
    jr["windows_total"] = r.windows_total;
    jr["windows_failed"] = r.windows_failed;
    jr["variance_clamps"] = r.variance_clamps;
    j["rows"].push_back(jr);
  }
  return j.dump(2) + "\n";
}

std::string MseReport::to_table() const {
  std::vector<int> horizons;
  for (const auto& r : rows)
    for (const auto& [h, v] : r.horizon_mse)
      if (std::find(horizons.begin(), horizons.end(), h) == horizons.end())
        horizons.push_back(h);
  std::sort(horizons.begin(), horizons.end());

  std::ostringstream out;
  char buf[64];
  out << std::left;
  std::snprintf(buf, sizeof buf, "%-10s %-12s %12s", "Data set", "Model", "Historical");
  out << buf;
  for (int h : horizons) {
    std::snprintf(buf, sizeof buf, " %9d step", h);
    out << buf;
  }
  out << '\n';

  std::string last_dataset;
  bool any_in_sample = false;
  for (const auto& r : rows) {
    const std::string ds = r.dataset == last_dataset ? "" : r.dataset;
    last_dataset = r.dataset;
    any_in_sample = any_in_sample || r.historical_in_sample;
    std::snprintf(buf, sizeof buf, "%-10s %-12s %11.4g%s", ds.c_str(),
                  backend_display(r.model).c_str(), r.historical_mse,
                  r.historical_in_sample ? "*" : " ");
    out << buf;
    for (int h : horizons) {
      const auto it = r.horizon_mse.find(h);
      if (it == r.horizon_mse.end() || !std::isfinite(it->second))
        std::snprintf(buf, sizeof buf, " %14s", "-");
      else
        std::snprintf(buf, sizeof buf, " %14.4g", it->second);
      out << buf;
    }
    out << '\n';
  }
  if (any_in_sample) out << "* historical predictions are in-sample for rolling runs\n";
  return out.str();
}

}  // namespace gcpv
