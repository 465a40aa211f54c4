#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcpv/data.hpp"
#include "gcpv/model_io.hpp"
#include "gcpv/train.hpp"

namespace gcpv {

enum class ModelBackend { GcpvLa, GcpvMcmc, GpExp, Garch };

std::string backend_name(ModelBackend backend);
std::optional<ModelBackend> backend_from_name(const std::string& name);

struct Windowing {
  enum class Kind { Expanding, Rolling };
  Kind kind = Kind::Expanding;
  std::size_t window = 120;      // rolling: training window length
  std::size_t step = 7;          // rolling: retrain cadence, days
  std::size_t retrain_every = 10;  // expanding: new observations per retrain
  std::size_t min_train = 1;  // expanding: observations before the first forecast
};

struct ForecastTask {
  ModelBackend model = ModelBackend::GcpvLa;
  std::vector<int> horizons = {1, 7, 30};
  Windowing windowing;
  std::uint64_t seed = 0;
  int draws = 10000;         // sigma draws per prediction
  int mcmc_burn_in = 10000;  // paper defaults
  int mcmc_samples = 10000;
  int jobs = 0;              // worker pool size; 0 = hardware concurrency
  bool keep_predictions = false;  // retain per-target predictions in the row
  TrainOptions train;
};

/// One retained forecast: variance predicted for `target` from `origin`.
struct ForecastPoint {
  std::size_t origin = 0;
  std::size_t target = 0;
  int horizon = 0;
  double predicted_var = 0.0;
};

/// One Table-1-style result row.
struct MseRow {
  std::string dataset;
  std::string model;
  double historical_mse = 0.0;
  bool historical_in_sample = false;  // true for rolling (financial) runs
  std::map<int, double> horizon_mse;
  std::map<int, std::size_t> horizon_count;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t windows_total = 0;
  std::size_t windows_failed = 0;
  long variance_clamps = 0;
  /// Not serialized: reports must be byte-identical for identical (task, seed).
  double runtime_seconds = 0.0;
  /// Filled only when the task sets keep_predictions.
  std::vector<ForecastPoint> predictions;
};

struct MseReport {
  std::vector<MseRow> rows;

  std::string to_json() const;
  /// Aligned plain-text table mirroring the paper's layout.
  std::string to_table() const;
};

/// Per-point prediction series in sigma units, for plotting and CSV export.
struct PredictionSeries {
  std::vector<double> t;
  std::vector<double> mean_sigma;  // sample mean of sigma draws (point predictor)
  std::vector<double> var_sigma;   // sample variance of sigma draws (error bounds)
  std::vector<double> lo95, hi95;  // 2.5 / 97.5 percentiles
  std::vector<double> reference;   // true sigma when known, else |y|

  std::string to_csv() const;
};

/// Mean squared error between predicted and reference VARIANCES (sigma^2).
double mse(std::span<const double> predicted_var, std::span<const double> reference_var);

/// Runs the forecasting protocol for one model over one series and returns
/// its report row (historical plus one MSE per horizon).
///
/// Expanding: at each observed prefix (from min_train points on), predict the
/// variance 1, 7, 30 grid steps past the last observation; hyperparameters
/// retrained every retrain_every new observations. Historical = train on the
/// full series once and predict sigma at the observation times.
///
/// Rolling: train on each `window`-day slice, then forecast daily until the
/// next retrain origin, each day conditioning on the trailing `window` days.
/// Historical = in-sample prediction over each training window, averaged.
///
/// Per-window failures (e.g. GARCH on a short prefix) are recorded and
/// excluded; they never abort the run. Reference variance is true_sigma^2
/// when the series carries it, else squared observations.
MseRow run_forecast(const ForecastTask& task, const TimeSeries& ts);

/// Historical volatility under an already-trained model: predictive draws of
/// sigma(t_i) at every observation time via the Laplace Gaussian or the MCMC
/// mixture, mapped through g.
PredictionSeries run_historical(ModelBackend backend, const TimeSeries& ts,
                                const TrainedModel& model, int draws, std::uint64_t seed,
                                int mcmc_burn_in = 10000, int mcmc_samples = 10000);

}  // namespace gcpv
