// Python bindings for the GCPV core: kernels, warps, likelihoods, Laplace and
// MCMC inference, hyperparameter training, the GARCH baseline, simulators and
// the forecasting harness.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gcpv/bench.hpp"
#include "gcpv/data.hpp"
#include "gcpv/errors.hpp"
#include "gcpv/garch.hpp"
#include "gcpv/kernel.hpp"
#include "gcpv/laplace.hpp"
#include "gcpv/likelihood.hpp"
#include "gcpv/mcmc.hpp"
#include "gcpv/model_io.hpp"
#include "gcpv/rng.hpp"
#include "gcpv/train.hpp"
#include "gcpv/warp.hpp"

namespace py = pybind11;

namespace {

gcpv::ModelConfig config_from_name(const std::string& model) {
  gcpv::ModelConfig config;
  if (model == "gp-exp")
    config.kind = gcpv::ModelKind::GpExp;
  else if (model == "gcpv")
    config.kind = gcpv::ModelKind::Gcpv;
  else
    throw py::value_error("model must be 'gcpv' or 'gp-exp'");
  return config;
}

gcpv::ModelBackend backend_from(const std::string& name) {
  const auto b = gcpv::backend_from_name(name);
  if (!b) throw py::value_error("unknown backend '" + name + "'");
  return *b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gaussian copula process volatility (GCPV): latent volatility "
            "inference under a warped GP prior, with Laplace and MCMC "
            "backends, hyperparameter learning and a GARCH(1,1) baseline.";

  py::register_exception<gcpv::Error>(m, "GcpvError");

  // --- kernel ---------------------------------------------------------------
  py::class_<gcpv::KernelSpec>(m, "KernelSpec")
      .def(py::init([](double amplitude, double lengthscale) {
             return gcpv::KernelSpec{gcpv::KernelFamily::SquaredExponential, amplitude,
                                     lengthscale};
           }),
           py::arg("amplitude") = 1.0, py::arg("lengthscale") = 1.0)
      .def_readwrite("amplitude", &gcpv::KernelSpec::amplitude)
      .def_readwrite("lengthscale", &gcpv::KernelSpec::lengthscale)
      .def("__repr__", [](const gcpv::KernelSpec& s) {
        return "KernelSpec(amplitude=" + std::to_string(s.amplitude) +
               ", lengthscale=" + std::to_string(s.lengthscale) + ")";
      });

  m.def("kernel_eval", &gcpv::kernel_eval, py::arg("spec"), py::arg("t"), py::arg("t2"));
  m.def(
      "kernel_matrix",
      [](const gcpv::KernelSpec& spec, const std::vector<double>& times, double jitter) {
        return gcpv::kernel_matrix(spec, times, jitter);
      },
      py::arg("spec"), py::arg("times"), py::arg("jitter") = -1.0);
  m.def(
      "cross_covariance",
      [](const gcpv::KernelSpec& spec, const std::vector<double>& times, double tstar) {
        return gcpv::cross_covariance(spec, times, tstar);
      },
      py::arg("spec"), py::arg("times"), py::arg("tstar"));

  // --- warp -----------------------------------------------------------------
  py::class_<gcpv::WarpComponent>(m, "WarpComponent")
      .def(py::init<double, double, double>(), py::arg("a"), py::arg("b"), py::arg("c"))
      .def_readwrite("a", &gcpv::WarpComponent::a)
      .def_readwrite("b", &gcpv::WarpComponent::b)
      .def_readwrite("c", &gcpv::WarpComponent::c);

  py::class_<gcpv::WarpParams>(m, "WarpParams")
      .def(py::init([](std::vector<std::tuple<double, double, double>> components,
                       double floor) {
             gcpv::WarpParams p;
             p.components.clear();
             for (const auto& [a, b, c] : components)
               p.components.push_back(gcpv::WarpComponent{a, b, c});
             p.floor = floor;
             return p;
           }),
           py::arg("components") = std::vector<std::tuple<double, double, double>>{{1, 1, 0}},
           py::arg("floor") = 0.0)
      .def_readwrite("components", &gcpv::WarpParams::components)
      .def_readwrite("floor", &gcpv::WarpParams::floor);

  py::class_<gcpv::ExponentialWarp>(m, "ExponentialWarp").def(py::init<>());

  m.def("warp_eval", &gcpv::warp_eval, py::arg("warp"), py::arg("x"));
  m.def("warp_deriv", &gcpv::warp_deriv, py::arg("warp"), py::arg("x"));
  m.def("warp_inverse", &gcpv::warp_inverse, py::arg("warp"), py::arg("sigma"));
  m.def("marginal_cdf", &gcpv::marginal_cdf, py::arg("warp"), py::arg("a"));
  m.def("marginal_pdf", &gcpv::marginal_pdf, py::arg("warp"), py::arg("a"));

  // --- likelihood -----------------------------------------------------------
  m.def(
      "gcpv_loglik",
      [](const Eigen::VectorXd& y, const Eigen::VectorXd& f, const gcpv::WarpKind& warp) {
        const auto e = gcpv::gcpv_loglik(y, f, warp);
        return py::make_tuple(e.value, e.grad, e.neg_hess_diag);
      },
      py::arg("y"), py::arg("f"), py::arg("warp"),
      "Log likelihood of y under N(0, g(f)^2) with its gradient and the "
      "negative Hessian diagonal W.");

  // --- laplace ---------------------------------------------------------------
  py::class_<gcpv::LaplaceFit>(m, "LaplaceFit")
      .def_readonly("fhat", &gcpv::LaplaceFit::fhat)
      .def_readonly("wtilde", &gcpv::LaplaceFit::wtilde)
      .def_readonly("a_fhat", &gcpv::LaplaceFit::a_fhat)
      .def_readonly("grad_at_mode", &gcpv::LaplaceFit::grad_at_mode)
      .def_readonly("log_marginal", &gcpv::LaplaceFit::log_marginal)
      .def_readonly("iterations", &gcpv::LaplaceFit::iterations)
      .def_readonly("converged", &gcpv::LaplaceFit::converged);

  m.def(
      "find_mode",
      [](const Eigen::MatrixXd& K, const Eigen::VectorXd& y, const gcpv::WarpKind& warp) {
        return gcpv::find_mode(K, y, gcpv::GcpvLikelihood{warp});
      },
      py::arg("K"), py::arg("y"), py::arg("warp"),
      "Laplace mode finding for the GCPV likelihood (clipped-curvature Newton).");
  m.def(
      "find_mode_gaussian",
      [](const Eigen::MatrixXd& K, const Eigen::VectorXd& y, double noise) {
        return gcpv::find_mode(K, y, gcpv::GaussianTestLikelihood{noise});
      },
      py::arg("K"), py::arg("y"), py::arg("noise"),
      "Laplace fit under the conjugate Gaussian test likelihood (exact).");
  m.def(
      "predict_latent",
      [](const gcpv::LaplaceFit& fit, const Eigen::MatrixXd& K, const Eigen::VectorXd& kstar,
         double kstarstar) {
        const auto pg = gcpv::predict_latent(fit, K, kstar, kstarstar);
        return py::make_tuple(pg.mean, pg.variance);
      },
      py::arg("fit"), py::arg("K"), py::arg("kstar"), py::arg("kstarstar"));
  m.def("posterior_covariance", &gcpv::posterior_covariance, py::arg("fit"), py::arg("K"));

  // --- mcmc -----------------------------------------------------------------
  py::class_<gcpv::SampleSet>(m, "SampleSet")
      .def_readonly("samples", &gcpv::SampleSet::samples)
      .def_readonly("logliks", &gcpv::SampleSet::logliks)
      .def_readonly("rng_seed", &gcpv::SampleSet::rng_seed)
      .def_readonly("burn_in", &gcpv::SampleSet::burn_in)
      .def_readonly("thin", &gcpv::SampleSet::thin)
      .def("save", &gcpv::save_sample_set, py::arg("path"),
           py::call_guard<py::gil_scoped_release>())
      .def_static("load", &gcpv::load_sample_set, py::arg("path"));

  m.def(
      "sample_posterior",
      [](const Eigen::MatrixXd& K, const Eigen::VectorXd& y, const gcpv::WarpKind& warp,
         int burn_in, int samples, std::uint64_t seed, int thin) {
        const gcpv::GcpvLikelihood lik{warp};
        py::gil_scoped_release release;
        return gcpv::sample_posterior(K, y, lik, burn_in, samples, seed, thin);
      },
      py::arg("K"), py::arg("y"), py::arg("warp"), py::arg("burn_in") = 10000,
      py::arg("samples") = 10000, py::arg("seed") = 0, py::arg("thin") = 1,
      "Elliptical slice sampling of the latent posterior p(f | y, z).");
  m.def(
      "predict_mixture",
      [](const gcpv::SampleSet& ss, const Eigen::MatrixXd& K, const Eigen::VectorXd& kstar,
         double kstarstar, int n_draws, std::uint64_t seed) {
        gcpv::Rng rng(seed);
        return gcpv::predict_mixture(ss, K, kstar, kstarstar, n_draws, rng);
      },
      py::arg("samples"), py::arg("K"), py::arg("kstar"), py::arg("kstarstar"),
      py::arg("n_draws"), py::arg("seed") = 0,
      "Draws of f* from the J-component Gaussian mixture predictive.");

  // --- train / model --------------------------------------------------------
  py::class_<gcpv::TrainedModel>(m, "TrainedModel")
      .def_readonly("kernel", &gcpv::TrainedModel::kernel)
      .def_property_readonly("warp",
                             [](const gcpv::TrainedModel& mo) { return mo.warp; })
      .def_readonly("log_marginal", &gcpv::TrainedModel::log_marginal)
      .def_readonly("converged", &gcpv::TrainedModel::converged)
      .def("to_json", &gcpv::model_to_json)
      .def_static("from_json", &gcpv::model_from_json)
      .def("save", &gcpv::save_model, py::arg("path"))
      .def_static("load", &gcpv::load_model, py::arg("path"));

  m.def(
      "fit",
      [](const std::vector<double>& t, const std::vector<double>& y, const std::string& model,
         int multi_starts, int max_cg_iterations) {
        const gcpv::ModelConfig config = config_from_name(model);
        gcpv::TrainOptions opts;
        opts.multi_starts = multi_starts;
        opts.cg.max_iterations = max_cg_iterations;
        py::gil_scoped_release release;
        const gcpv::TrainResult r = gcpv::optimize(t, y, config, {}, opts);
        gcpv::TrainedModel out;
        out.kernel = r.kernel;
        out.warp = r.warp;
        out.config = config;
        out.log_marginal = r.objective;
        out.converged = r.converged && r.fit.converged;
        out.n = t.size();
        out.t_begin = t.empty() ? 0.0 : t.front();
        out.t_end = t.empty() ? 0.0 : t.back();
        return out;
      },
      py::arg("t"), py::arg("y"), py::arg("model") = "gcpv", py::arg("multi_starts") = 3,
      py::arg("max_cg_iterations") = 200,
      "Trains hyperparameters by maximizing the Laplace approximate log "
      "marginal likelihood.");

  // --- garch ------------------------------------------------------------------
  py::class_<gcpv::GarchParams>(m, "GarchParams")
      .def(py::init([](double omega, double alpha, double beta) {
             return gcpv::GarchParams{omega, alpha, beta};
           }),
           py::arg("omega"), py::arg("alpha"), py::arg("beta"))
      .def_readwrite("omega", &gcpv::GarchParams::omega)
      .def_readwrite("alpha", &gcpv::GarchParams::alpha)
      .def_readwrite("beta", &gcpv::GarchParams::beta)
      .def("unconditional_variance", &gcpv::GarchParams::unconditional_variance);

  m.def(
      "garch_filter",
      [](const gcpv::GarchParams& p, const std::vector<double>& y, double sigma0sq) {
        const auto r = gcpv::garch_filter(p, y, sigma0sq);
        return py::make_tuple(r.sigma2, r.loglik);
      },
      py::arg("params"), py::arg("y"), py::arg("sigma0sq"));
  m.def(
      "garch_fit",
      [](const std::vector<double>& y) {
        const auto fit = gcpv::garch_fit(y);
        return py::make_tuple(fit.params, fit.sigma0sq, fit.loglik);
      },
      py::arg("y"));
  m.def(
      "garch_forecast",
      [](const gcpv::GarchParams& p, const std::vector<double>& y, double sigma_n_sq, int h) {
        return gcpv::garch_forecast(p, y, sigma_n_sq, h);
      },
      py::arg("params"), py::arg("y"), py::arg("sigma_n_sq"), py::arg("h"));
  m.def(
      "garch_simulate",
      [](const gcpv::GarchParams& p, int n, std::uint64_t seed) {
        gcpv::Rng rng(seed);
        const auto path = gcpv::garch_simulate(p, n, rng);
        return py::make_tuple(path.y, path.sigma2);
      },
      py::arg("params"), py::arg("n"), py::arg("seed") = 0);

  // --- data -------------------------------------------------------------------
  py::class_<gcpv::TimeSeries>(m, "TimeSeries")
      .def(py::init([](std::vector<double> times, std::vector<double> values,
                       std::optional<std::vector<double>> true_sigma, std::string label) {
             gcpv::TimeSeries ts;
             ts.times = std::move(times);
             ts.values = std::move(values);
             ts.true_sigma = std::move(true_sigma);
             ts.label = std::move(label);
             return ts;
           }),
           py::arg("times"), py::arg("values"), py::arg("true_sigma") = py::none(),
           py::arg("label") = "")
      .def_readonly("times", &gcpv::TimeSeries::times)
      .def_readonly("values", &gcpv::TimeSeries::values)
      .def_readonly("true_sigma", &gcpv::TimeSeries::true_sigma)
      .def_readonly("label", &gcpv::TimeSeries::label)
      .def("__len__", &gcpv::TimeSeries::size)
      .def("slice", &gcpv::TimeSeries::slice, py::arg("begin"), py::arg("end"));

  m.def("simulate_trig", &gcpv::simulate_trig, py::arg("seed"));
  m.def(
      "simulate_jump",
      [](std::uint64_t seed, double low, double high, double t_up, double t_down) {
        return gcpv::simulate_jump(seed, gcpv::JumpConfig{low, high, t_up, t_down});
      },
      py::arg("seed"), py::arg("low") = 0.1, py::arg("high") = 7.0, py::arg("t_up") = 2.0,
      py::arg("t_down") = 4.0);
  m.def(
      "load_series",
      [](const std::filesystem::path& path, const std::string& format) {
        std::optional<gcpv::CsvFormat> fmt;
        if (format == "prices") fmt = gcpv::CsvFormat::PriceCsv;
        else if (format == "returns") fmt = gcpv::CsvFormat::ReturnsCsv;
        else if (format == "dataset") fmt = gcpv::CsvFormat::DatasetCsv;
        else if (format != "auto") throw py::value_error("format: auto|dataset|prices|returns");
        return gcpv::load_series(path, fmt);
      },
      py::arg("path"), py::arg("format") = "auto");

  // --- bench -------------------------------------------------------------------
  m.def(
      "mse",
      [](const std::vector<double>& predicted, const std::vector<double>& reference) {
        return gcpv::mse(predicted, reference);
      },
      py::arg("predicted_var"), py::arg("reference_var"));

  py::class_<gcpv::PredictionSeries>(m, "PredictionSeries")
      .def_readonly("t", &gcpv::PredictionSeries::t)
      .def_readonly("mean_sigma", &gcpv::PredictionSeries::mean_sigma)
      .def_readonly("var_sigma", &gcpv::PredictionSeries::var_sigma)
      .def_readonly("lo95", &gcpv::PredictionSeries::lo95)
      .def_readonly("hi95", &gcpv::PredictionSeries::hi95)
      .def_readonly("reference", &gcpv::PredictionSeries::reference)
      .def("to_csv", &gcpv::PredictionSeries::to_csv);

  m.def(
      "run_historical",
      [](const std::string& backend, const gcpv::TimeSeries& ts, const gcpv::TrainedModel& mo,
         int draws, std::uint64_t seed, int mcmc_burn_in, int mcmc_samples) {
        py::gil_scoped_release release;
        return gcpv::run_historical(backend_from(backend), ts, mo, draws, seed, mcmc_burn_in,
                                    mcmc_samples);
      },
      py::arg("backend"), py::arg("ts"), py::arg("model"), py::arg("draws") = 10000,
      py::arg("seed") = 0, py::arg("mcmc_burn_in") = 10000, py::arg("mcmc_samples") = 10000,
      "Predictive draws of sigma(t_i) at every observation time, summarized.");

  m.def(
      "run_forecast",
      [](const std::string& backend, const gcpv::TimeSeries& ts, bool expanding,
         std::size_t window, std::size_t step, std::size_t retrain_every,
         std::vector<int> horizons, int draws, std::uint64_t seed, int jobs,
         int mcmc_burn_in, int mcmc_samples) {
        gcpv::ForecastTask task;
        task.model = backend_from(backend);
        task.horizons = std::move(horizons);
        task.windowing.kind = expanding ? gcpv::Windowing::Kind::Expanding
                                        : gcpv::Windowing::Kind::Rolling;
        task.windowing.window = window;
        task.windowing.step = step;
        task.windowing.retrain_every = retrain_every;
        task.seed = seed;
        task.draws = draws;
        task.jobs = jobs;
        task.mcmc_burn_in = mcmc_burn_in;
        task.mcmc_samples = mcmc_samples;
        gcpv::MseRow row;
        {
          py::gil_scoped_release release;
          row = gcpv::run_forecast(task, ts);
        }
        py::dict out;
        out["dataset"] = row.dataset;
        out["model"] = row.model;
        out["historical_mse"] = row.historical_mse;
        out["historical_in_sample"] = row.historical_in_sample;
        out["horizon_mse"] = row.horizon_mse;
        out["horizon_count"] = row.horizon_count;
        out["windows_total"] = row.windows_total;
        out["windows_failed"] = row.windows_failed;
        out["variance_clamps"] = row.variance_clamps;
        return out;
      },
      py::arg("backend"), py::arg("ts"), py::arg("expanding") = true, py::arg("window") = 120,
      py::arg("step") = 7, py::arg("retrain_every") = 10,
      py::arg("horizons") = std::vector<int>{1, 7, 30}, py::arg("draws") = 10000,
      py::arg("seed") = 0, py::arg("jobs") = 0, py::arg("mcmc_burn_in") = 10000,
      py::arg("mcmc_samples") = 10000,
      "Expanding or rolling forecasting backtest; returns the MSE report row.");
}
