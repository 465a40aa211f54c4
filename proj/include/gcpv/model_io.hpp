#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "gcpv/kernel.hpp"
#include "gcpv/train.hpp"
#include "gcpv/warp.hpp"

namespace gcpv {

/// A trained model as persisted by `fit` and consumed by `predict`/`marginal`.
struct TrainedModel {
  KernelSpec kernel;
  WarpKind warp = WarpParams{};
  ModelConfig config;
  double log_marginal = 0.0;
  bool converged = true;
  // Training-window metadata.
  std::size_t n = 0;
  double t_begin = 0.0;
  double t_end = 0.0;
  std::uint64_t seed = 0;

  HyperVector hyper() const {
    return HyperVector::pack(kernel, warp, config.amplitude_trainable());
  }
};

std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

void save_model(const std::filesystem::path& path, const TrainedModel& model);
TrainedModel load_model(const std::filesystem::path& path);

/// Writes content to path atomically (temp file + rename).
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace gcpv
