#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gcpv {

/// A heteroscedastic series: observations y at strictly increasing times,
/// zero assumed mean, with the generating sigma attached for simulations.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::optional<std::vector<double>> true_sigma;
  std::string label;

  std::size_t size() const { return times.size(); }
  /// Contiguous slice [begin, end); true_sigma sliced along.
  TimeSeries slice(std::size_t begin, std::size_t end) const;
};

/// TRIG: sigma(t) = sin(t) cos(t^2) + 1 on t = 0, 0.02, ..., 4 (201 points),
/// y_i ~ N(0, sigma_i^2).
TimeSeries simulate_trig(std::uint64_t seed);

/// JUMP level schedule; the paper fixes the grid and the two levels but not
/// the change points, so they are configurable with this default.
struct JumpConfig {
  double low = 0.1;
  double high = 7.0;
  double t_up = 2.0;    // sigma rises to `high` at t_up ...
  double t_down = 4.0;  // ... and falls back at t_down
};

/// JUMP: sigma alternates between 0.1 and 7 on t = 0, 0.1, ..., 6 (61 points).
TimeSeries simulate_jump(std::uint64_t seed, const JumpConfig& config = {});

enum class CsvFormat {
  PriceCsv,    // header date,price -> n-1 log returns on day indices 0,1,...
  ReturnsCsv,  // header date,return -> passthrough
  DatasetCsv,  // header t,y[,true_sigma] (the simulate export format)
};

/// Loads a return series from a financial CSV. The time axis is the integer
/// trading-day index; dates are validated but not retained.
/// Throws ParseError (with row context) or NonPositivePrice.
TimeSeries load_returns(const std::filesystem::path& path, CsvFormat format);

/// Loads any of the three formats, sniffing by header when format is absent.
TimeSeries load_series(const std::filesystem::path& path,
                       std::optional<CsvFormat> format = {});

/// Writes t,y[,true_sigma] rows; the same format load_series reads back.
void save_dataset(std::ostream& out, const TimeSeries& ts);
void save_dataset(const std::filesystem::path& path, const TimeSeries& ts);

/// One rolling train/forecast window: train on [begin, end), forecast from
/// origin == end until the next origin.
struct Window {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t forecast_origin = 0;
};

/// Origins at window, window + step, ... while they index into the series.
/// Throws WindowTooLarge when window > len(ts).
std::vector<Window> rolling_windows(const TimeSeries& ts, std::size_t window,
                                    std::size_t step);

}  // namespace gcpv
