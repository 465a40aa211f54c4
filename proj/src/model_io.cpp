#include "gcpv/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gcpv/errors.hpp"

namespace gcpv {

using nlohmann::json;

std::string model_to_json(const TrainedModel& model) {
  json j;
  j["kernel"] = {{"family", "squared_exponential"},
                 {"amplitude", model.kernel.amplitude},
                 {"lengthscale", model.kernel.lengthscale},
                 {"amplitude_trainable", model.config.amplitude_trainable()}};
  if (warp_is_parametric(model.warp)) {
    const auto& p = std::get<WarpParams>(model.warp);
    json comps = json::array();
    for (const auto& comp : p.components)
      comps.push_back({{"a", comp.a}, {"b", comp.b}, {"c", comp.c}});
    j["warp"] = {{"kind", "parametric"}, {"components", comps}, {"floor", p.floor}};
  } else {
    j["warp"] = {{"kind", "exponential"}, {"components", json::array()}, {"floor", 0.0}};
  }
  j["train_window"] = {{"n", model.n},
                       {"t_begin", model.t_begin},
                       {"t_end", model.t_end},
                       {"seed", model.seed},
                       {"converged", model.converged}};
  j["log_marginal"] = model.log_marginal;
  return j.dump(2) + "\n";
}

TrainedModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what());
  }
  try {
    TrainedModel m;
    const auto& jk = j.at("kernel");
    m.kernel.amplitude = jk.at("amplitude").get<double>();
    m.kernel.lengthscale = jk.at("lengthscale").get<double>();

    const auto& jw = j.at("warp");
    const std::string kind = jw.at("kind").get<std::string>();
    if (kind == "parametric") {
      WarpParams p;
      p.floor = jw.at("floor").get<double>();
      p.components.clear();
      for (const auto& jc : jw.at("components"))
        p.components.push_back(WarpComponent{jc.at("a").get<double>(),
                                             jc.at("b").get<double>(),
                                             jc.at("c").get<double>()});
      m.warp = p;
      m.config.kind = ModelKind::Gcpv;
      m.config.warp_components = static_cast<int>(p.components.size());
    } else if (kind == "exponential") {
      m.warp = ExponentialWarp{};
      m.config.kind = ModelKind::GpExp;
    } else {
      throw ParseError("model JSON: unknown warp kind '" + kind + "'");
    }

    if (j.contains("train_window")) {
      const auto& jt = j.at("train_window");
      m.n = jt.value("n", std::size_t{0});
      m.t_begin = jt.value("t_begin", 0.0);
      m.t_end = jt.value("t_end", 0.0);
      m.seed = jt.value("seed", std::uint64_t{0});
      m.converged = jt.value("converged", true);
    }
    m.log_marginal = j.value("log_marginal", 0.0);

    if (!m.kernel.valid()) throw ParseError("model JSON: invalid kernel hyperparameters");
    if (warp_is_parametric(m.warp) && !std::get<WarpParams>(m.warp).valid())
      throw ParseError("model JSON: invalid warp parameters");
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const TrainedModel& model) {
  atomic_write(path, model_to_json(model));
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw Error("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("rename " + tmp + " -> " + path.string() + ": " + ec.message());
}

}  // namespace gcpv
