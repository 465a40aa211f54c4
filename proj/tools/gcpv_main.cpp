// gcpv: simulate, fit, predict, backtest and marginal-density export for the
// Gaussian copula process volatility model.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 numeric failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcpv/bench.hpp"
#include "gcpv/format.hpp"
#include "gcpv/data.hpp"
#include "gcpv/errors.hpp"
#include "gcpv/kernel.hpp"
#include "gcpv/log.hpp"
#include "gcpv/laplace.hpp"
#include "gcpv/likelihood.hpp"
#include "gcpv/mcmc.hpp"
#include "gcpv/model_io.hpp"
#include "gcpv/rng.hpp"
#include "gcpv/train.hpp"
#include "gcpv/warp.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

void write_output(const std::optional<std::string>& path, const std::string& content) {
  if (path)
    gcpv::atomic_write(*path, content);
  else
    std::cout << content;
}

gcpv::TimeSeries load_input(const std::string& path, const std::string& format) {
  std::optional<gcpv::CsvFormat> fmt;
  if (format == "prices") fmt = gcpv::CsvFormat::PriceCsv;
  else if (format == "returns") fmt = gcpv::CsvFormat::ReturnsCsv;
  else if (format == "dataset") fmt = gcpv::CsvFormat::DatasetCsv;
  return gcpv::load_series(path, fmt);
}

std::vector<int> parse_horizons(const std::string& spec) {
  std::vector<int> horizons;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const int h = std::stoi(item);
    if (h < 1) throw CLI::ValidationError("--horizons", "horizons must be >= 1");
    horizons.push_back(h);
  }
  if (horizons.empty()) throw CLI::ValidationError("--horizons", "empty horizon list");
  return horizons;
}

int cmd_simulate(const std::string& name, std::uint64_t seed,
                 const std::optional<std::string>& out) {
  gcpv::TimeSeries ts;
  if (name == "trig")
    ts = gcpv::simulate_trig(seed);
  else
    ts = gcpv::simulate_jump(seed);
  std::ostringstream body;
  gcpv::save_dataset(body, ts);
  write_output(out, body.str());
  return 0;
}

int cmd_fit(const std::string& data, const std::string& format, const std::string& model,
            std::uint64_t seed, const std::optional<std::string>& out) {
  const gcpv::TimeSeries ts = load_input(data, format);
  gcpv::ModelConfig config;
  config.kind = model == "gp-exp" ? gcpv::ModelKind::GpExp : gcpv::ModelKind::Gcpv;

  const gcpv::TrainResult r = gcpv::optimize(ts.times, ts.values, config);

  gcpv::TrainedModel m;
  m.kernel = r.kernel;
  m.warp = r.warp;
  m.config = config;
  m.log_marginal = r.objective;
  m.converged = r.converged && r.fit.converged;
  m.n = ts.size();
  m.t_begin = ts.times.front();
  m.t_end = ts.times.back();
  m.seed = seed;

  const std::string text = gcpv::model_to_json(m);
  write_output(out, text);
  std::cerr << "fit: n=" << m.n << " newton_iterations=" << r.fit.iterations
            << " log_marginal=" << m.log_marginal << (m.converged ? "" : " (not converged)")
            << '\n';
  return m.converged ? 0 : kExitNumeric;
}

int cmd_predict(const std::string& model_path, const std::string& data,
                const std::string& format, const std::string& mode,
                const std::string& inference, const std::string& horizons_spec, int draws,
                int burnin, int samples, std::uint64_t seed,
                const std::optional<std::string>& out) {
  const gcpv::TrainedModel model = gcpv::load_model(model_path);
  const gcpv::TimeSeries ts = load_input(data, format);
  const bool mcmc = inference == "mcmc";
  const gcpv::ModelBackend backend =
      mcmc ? gcpv::ModelBackend::GcpvMcmc
           : (model.config.kind == gcpv::ModelKind::GpExp ? gcpv::ModelBackend::GpExp
                                                          : gcpv::ModelBackend::GcpvLa);

  if (mode == "historical") {
    const gcpv::PredictionSeries series =
        gcpv::run_historical(backend, ts, model, draws, seed, burnin, samples);
    write_output(out, series.to_csv());
    return 0;
  }

  // Forecast mode: fixed hyperparameters from the model file, expanding
  // conditioning set, one variance column per horizon.
  const std::vector<int> horizons = parse_horizons(horizons_spec);
  gcpv::ForecastTask task;
  task.model = backend;
  task.horizons = horizons;
  task.windowing.kind = gcpv::Windowing::Kind::Expanding;
  task.seed = seed;
  task.draws = draws;
  task.mcmc_burn_in = burnin;
  task.mcmc_samples = samples;

  // Reuse the bench conditioning machinery indirectly: emit per-target rows.
  std::string csv = "t,reference";
  for (int h : horizons) csv += ",var_h" + std::to_string(h);
  csv += "\n";

  const std::vector<double> ref = [&] {
    std::vector<double> r(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
      r[i] = ts.true_sigma ? (*ts.true_sigma)[i] * (*ts.true_sigma)[i]
                           : ts.values[i] * ts.values[i];
    return r;
  }();

  // forecasts[target][h]
  std::vector<std::map<int, double>> forecasts(ts.size());
  gcpv::Rng root(seed);
  for (std::size_t origin = 1; origin < ts.size(); ++origin) {
    gcpv::Rng rng = root.split(origin);
    const gcpv::TimeSeries cond = ts.slice(0, origin);
    const Eigen::Map<const Eigen::VectorXd> y(cond.values.data(),
                                              static_cast<Eigen::Index>(cond.values.size()));
    const Eigen::MatrixXd K = gcpv::kernel_matrix(model.kernel, cond.times);
    const gcpv::GcpvLikelihood lik{model.warp};

    std::optional<gcpv::SampleSet> ss;
    std::optional<Eigen::LLT<Eigen::MatrixXd>> cholK;
    gcpv::LaplaceFit fit;
    if (mcmc) {
      ss = gcpv::sample_posterior(K, y, lik, burnin, samples, rng.next_u64());
      cholK.emplace(gcpv::cholesky(K));
    } else {
      fit = gcpv::find_mode(K, y, lik);
      if (!fit.converged) throw gcpv::NotConverged("mode refit failed at origin " +
                                                   std::to_string(origin));
    }
    for (int h : horizons) {
      const std::size_t target = origin + static_cast<std::size_t>(h) - 1;
      if (target >= ts.size()) continue;
      const Eigen::VectorXd kstar =
          gcpv::cross_covariance(model.kernel, cond.times, ts.times[target]);
      double mean_sigma2 = 0.0;
      if (mcmc) {
        const Eigen::VectorXd fdraws = gcpv::predict_mixture(
            *ss, *cholK, kstar, model.kernel.amplitude, draws, rng);
        for (Eigen::Index i = 0; i < fdraws.size(); ++i) {
          const double s = gcpv::warp_eval(model.warp, fdraws(i));
          mean_sigma2 += s * s;
        }
        mean_sigma2 /= static_cast<double>(fdraws.size());
      } else {
        const gcpv::PredictiveGaussian pg =
            gcpv::predict_latent(fit, K, kstar, model.kernel.amplitude);
        const double sd = std::sqrt(pg.variance);
        for (int i = 0; i < draws; ++i) {
          const double s = gcpv::warp_eval(model.warp, pg.mean + sd * rng.normal());
          mean_sigma2 += s * s;
        }
        mean_sigma2 /= static_cast<double>(draws);
      }
      forecasts[target][h] = mean_sigma2;
    }
  }

  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (forecasts[i].empty()) continue;
    csv += gcpv::fmt_double(ts.times[i]) + "," + gcpv::fmt_double(ref[i]);
    for (int h : horizons) {
      csv += ",";
      if (forecasts[i].count(h)) csv += gcpv::fmt_double(forecasts[i][h]);
    }
    csv += "\n";
  }
  write_output(out, csv);
  return 0;
}

int cmd_backtest(const std::string& data, const std::string& format,
                 const std::string& models_spec, bool expanding, std::size_t window,
                 std::size_t step, std::size_t retrain_every, std::size_t min_train,
                 const std::string& horizons_spec,
                 int draws, int burnin, int samples, int jobs, std::uint64_t seed,
                 const std::optional<std::string>& out,
                 const std::optional<std::string>& table_out) {
  std::vector<gcpv::ModelBackend> backends;
  std::stringstream ss(models_spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = gcpv::backend_from_name(item);
    if (!b) throw CLI::ValidationError("--models", "unknown model '" + item + "'");
    backends.push_back(*b);
  }
  if (backends.empty()) throw CLI::ValidationError("--models", "empty model list");

  gcpv::TimeSeries ts = load_input(data, format);

  gcpv::MseReport report;
  std::size_t total = 0, failed = 0;
  for (const auto backend : backends) {
    gcpv::ForecastTask task;
    task.model = backend;
    task.horizons = parse_horizons(horizons_spec);
    task.windowing.kind =
        expanding ? gcpv::Windowing::Kind::Expanding : gcpv::Windowing::Kind::Rolling;
    task.windowing.window = window;
    task.windowing.step = step;
    task.windowing.retrain_every = retrain_every;
    task.windowing.min_train = min_train;
    task.seed = seed;
    task.draws = draws;
    task.mcmc_burn_in = burnin;
    task.mcmc_samples = samples;
    task.jobs = jobs;
    gcpv::log_info("backtest: running " + gcpv::backend_name(backend));
    report.rows.push_back(gcpv::run_forecast(task, ts));
    total += report.rows.back().windows_total;
    failed += report.rows.back().windows_failed;
  }

  write_output(out, report.to_json());
  if (table_out)
    gcpv::atomic_write(*table_out, report.to_table());
  else
    std::cerr << report.to_table();

  const double failure_rate =
      total > 0 ? static_cast<double>(failed) / static_cast<double>(total) : 0.0;
  return failure_rate <= 0.10 ? 0 : kExitNumeric;
}

int cmd_marginal(const std::string& model_path, const std::optional<std::string>& out) {
  const gcpv::TrainedModel model = gcpv::load_model(model_path);
  const gcpv::WarpKind& warp = model.warp;

  const double floor = gcpv::warp_floor(warp);
  if (gcpv::warp_is_parametric(warp)) {
    // A warp that cannot rise above its floor has no density to export.
    const double probe = gcpv::warp_eval(warp, 20.0);
    if (!(probe > floor + 1e-300))
      throw gcpv::DegenerateData("marginal: warp is degenerate (floor-only)");
  }

  // Grid covers [floor + eps, F^{-1}(0.999)].
  const double hi = gcpv::warp_eval(warp, 3.090232306167813);  // Phi^{-1}(0.999)
  const double eps = std::max(1e-9, 1e-6 * (hi - floor));
  const int kPoints = 512;
  std::string csv = "sigma,cdf,pdf\n";
  for (int i = 0; i < kPoints; ++i) {
    const double a =
        floor + eps + (hi - floor - eps) * static_cast<double>(i) / (kPoints - 1);
    csv += gcpv::fmt_double(a) + "," + gcpv::fmt_double(gcpv::marginal_cdf(warp, a)) + "," +
           gcpv::fmt_double(gcpv::marginal_pdf(warp, a)) + "\n";
  }
  write_output(out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian copula process volatility (GCPV) toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string data, format = "auto", model = "gcpv", inference = "laplace";
  std::string mode = "historical", horizons = "1,7,30", models_spec;
  std::optional<std::string> out, table_out;
  std::string name;
  int draws = 10000, burnin = 10000, samples = 10000, jobs = 0;
  std::size_t window = 120, step = 7, retrain_every = 10, min_train = 1;
  bool expanding = false;

  auto* sim = app.add_subcommand("simulate", "Write a simulated dataset CSV (t,y,true_sigma)");
  sim->add_option("name", name, "Dataset: trig or jump")
      ->required()
      ->check(CLI::IsMember({"trig", "jump"}));
  sim->add_option("--seed", seed, "RNG seed")->required();
  sim->add_option("--out", out, "Output path (default: stdout)");

  auto* fit = app.add_subcommand("fit", "Train hyperparameters by maximizing the Laplace "
                                        "approximate log marginal likelihood");
  fit->add_option("--data", data, "Input CSV")->required();
  fit->add_option("--format", format, "Input format: auto|dataset|prices|returns (default auto)")
      ->check(CLI::IsMember({"auto", "dataset", "prices", "returns"}));
  fit->add_option("--model", model, "Model: gcpv or gp-exp (default gcpv)")
      ->check(CLI::IsMember({"gcpv", "gp-exp"}));
  fit->add_option("--inference", inference, "Inference used for training (laplace)")
      ->check(CLI::IsMember({"laplace"}));
  fit->add_option("--seed", seed, "RNG seed (recorded in the model file)")->required();
  fit->add_option("--out", out, "Model JSON path (default: stdout)");

  auto* pred = app.add_subcommand("predict", "Historical or multi-step volatility predictions");
  pred->add_option("--model", model, "Trained model JSON")->required();
  pred->add_option("--data", data, "Input CSV")->required();
  pred->add_option("--format", format, "Input format (default auto)")
      ->check(CLI::IsMember({"auto", "dataset", "prices", "returns"}));
  pred->add_option("--mode", mode, "historical or forecast (default historical)")
      ->check(CLI::IsMember({"historical", "forecast"}));
  pred->add_option("--inference", inference, "laplace or mcmc (default laplace)")
      ->check(CLI::IsMember({"laplace", "mcmc"}));
  pred->add_option("--horizons", horizons, "Forecast horizons, comma separated (default 1,7,30)");
  pred->add_option("--draws", draws, "Sigma draws per prediction (default 10000)");
  pred->add_option("--burnin", burnin, "MCMC burn-in (default 10000)");
  pred->add_option("--samples", samples, "MCMC recorded samples (default 10000)");
  pred->add_option("--seed", seed, "RNG seed")->required();
  pred->add_option("--out", out, "Output CSV path (default: stdout)");

  auto* bt = app.add_subcommand("backtest", "Forecasting backtest with MSE report");
  bt->add_option("--data", data, "Input CSV")->required();
  bt->add_option("--format", format, "Input format (default auto)")
      ->check(CLI::IsMember({"auto", "dataset", "prices", "returns"}));
  bt->add_option("--models", models_spec,
                 "Comma-separated: gcpv-la,gcpv-mcmc,gp-exp,garch")
      ->required();
  bt->add_flag("--expanding", expanding,
               "Expanding windows (simulations) instead of rolling");
  bt->add_option("--window", window, "Rolling training window, days (default 120)");
  bt->add_option("--step", step, "Rolling retrain cadence, days (default 7)");
  bt->add_option("--retrain-every", retrain_every,
                 "Expanding retrain cadence, observations (default 10)");
  bt->add_option("--min-train", min_train,
                 "Expanding: observations before the first forecast (default 1)");
  bt->add_option("--horizons", horizons, "Forecast horizons (default 1,7,30)");
  bt->add_option("--draws", draws, "Sigma draws per prediction (default 10000)");
  bt->add_option("--burnin", burnin, "MCMC burn-in (default 10000)");
  bt->add_option("--samples", samples, "MCMC recorded samples (default 10000)");
  bt->add_option("--jobs", jobs, "Worker threads (default: number of processors)");
  bt->add_option("--seed", seed, "RNG seed")->required();
  bt->add_option("--out", out, "Report JSON path (default: stdout)");
  bt->add_option("--table", table_out, "Text table path (default: stderr)");

  auto* marg = app.add_subcommand("marginal",
                                  "Export the learned marginal cdf/pdf of sigma");
  marg->add_option("--model", model, "Trained model JSON")->required();
  marg->add_option("--out", out, "Output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11's own exit codes vary per error; the contract here is 1 for any
    // usage problem and 0 for --help.
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(name, seed, out);
    if (fit->parsed()) return cmd_fit(data, format, model, seed, out);
    if (pred->parsed())
      return cmd_predict(model, data, format, mode, inference, horizons, draws, burnin,
                         samples, seed, out);
    if (bt->parsed())
      return cmd_backtest(data, format, models_spec, expanding, window, step, retrain_every,
                          min_train, horizons, draws, burnin, samples, jobs, seed, out,
                          table_out);
    if (marg->parsed()) return cmd_marginal(model, out);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gcpv::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const gcpv::NotConverged& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const gcpv::DegenerateData& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const gcpv::FitFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const gcpv::CholeskyFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const gcpv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
