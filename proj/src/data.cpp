#include "gcpv/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gcpv/errors.hpp"
#include "gcpv/format.hpp"
#include "gcpv/rng.hpp"

namespace gcpv {

TimeSeries TimeSeries::slice(std::size_t begin, std::size_t end) const {
  TimeSeries out;
  out.label = label;
  out.times.assign(times.begin() + static_cast<std::ptrdiff_t>(begin),
                   times.begin() + static_cast<std::ptrdiff_t>(end));
  out.values.assign(values.begin() + static_cast<std::ptrdiff_t>(begin),
                    values.begin() + static_cast<std::ptrdiff_t>(end));
  if (true_sigma)
    out.true_sigma.emplace(true_sigma->begin() + static_cast<std::ptrdiff_t>(begin),
                           true_sigma->begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

TimeSeries simulate_trig(std::uint64_t seed) {
  TimeSeries ts;
  ts.label = "TRIG";
  Rng rng(seed);
  ts.true_sigma.emplace();
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.02 * i;
    const double sigma = std::sin(t) * std::cos(t * t) + 1.0;
    ts.times.push_back(t);
    ts.true_sigma->push_back(sigma);
    ts.values.push_back(sigma * rng.normal());
  }
  return ts;
}

TimeSeries simulate_jump(std::uint64_t seed, const JumpConfig& config) {
  TimeSeries ts;
  ts.label = "JUMP";
  Rng rng(seed);
  ts.true_sigma.emplace();
  for (int i = 0; i <= 60; ++i) {
    const double t = 0.1 * i;
    const double sigma = (t >= config.t_up && t < config.t_down) ? config.high : config.low;
    ts.times.push_back(t);
    ts.true_sigma->push_back(sigma);
    ts.values.push_back(sigma * rng.normal());
  }
  return ts;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_number(const std::string& cell, const std::filesystem::path& path, int row,
                    const std::string& column) {
  if (cell.empty())
    throw ParseError(path.string() + ": row " + std::to_string(row) + ": empty " + column +
                     " value");
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(cell, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed != cell.size())
    throw ParseError(path.string() + ": row " + std::to_string(row) + ": bad " + column +
                     " value '" + cell + "'");
  return value;
}

std::vector<std::string> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) rows.push_back(line);
  }
  return rows;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

TimeSeries load_returns(const std::filesystem::path& path, CsvFormat format) {
  const auto rows = read_rows(path);
  if (rows.empty()) throw ParseError(path.string() + ": empty file (header row required)");

  TimeSeries ts;
  ts.label = path.stem().string();

  if (format == CsvFormat::DatasetCsv) {
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto cells = split_csv_row(rows[r]);
      const int rownum = static_cast<int>(r) + 1;
      if (cells.size() < 2)
        throw ParseError(path.string() + ": row " + std::to_string(rownum) +
                         ": expected t,y[,true_sigma]");
      ts.times.push_back(parse_number(cells[0], path, rownum, "t"));
      ts.values.push_back(parse_number(cells[1], path, rownum, "y"));
      if (cells.size() >= 3 && !cells[2].empty()) {
        if (!ts.true_sigma) ts.true_sigma.emplace();
        ts.true_sigma->push_back(parse_number(cells[2], path, rownum, "true_sigma"));
      }
    }
    if (ts.true_sigma && ts.true_sigma->size() != ts.size())
      throw ParseError(path.string() + ": true_sigma column is partially filled");
  } else if (format == CsvFormat::PriceCsv) {
    std::vector<double> prices;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto cells = split_csv_row(rows[r]);
      const int rownum = static_cast<int>(r) + 1;
      if (cells.size() < 2)
        throw ParseError(path.string() + ": row " + std::to_string(rownum) +
                         ": expected date,price");
      const double price = parse_number(cells[1], path, rownum, "price");
      if (!(price > 0.0))
        throw NonPositivePrice(path.string() + ": row " + std::to_string(rownum) +
                               ": price " + std::to_string(price));
      prices.push_back(price);
    }
    for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
      ts.times.push_back(static_cast<double>(i));
      ts.values.push_back(std::log(prices[i + 1] / prices[i]));
    }
  } else {  // ReturnsCsv
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto cells = split_csv_row(rows[r]);
      const int rownum = static_cast<int>(r) + 1;
      if (cells.size() < 2)
        throw ParseError(path.string() + ": row " + std::to_string(rownum) +
                         ": expected date,return");
      ts.times.push_back(static_cast<double>(r - 1));
      ts.values.push_back(parse_number(cells[1], path, rownum, "return"));
    }
  }

  for (std::size_t i = 0; i + 1 < ts.times.size(); ++i)
    if (!(ts.times[i] < ts.times[i + 1]))
      throw ParseError(path.string() + ": times are not strictly increasing at row " +
                       std::to_string(i + 3));
  return ts;
}

TimeSeries load_series(const std::filesystem::path& path, std::optional<CsvFormat> format) {
  if (!format) {
    const auto rows = read_rows(path);
    if (rows.empty()) throw ParseError(path.string() + ": empty file (header row required)");
    const auto header = split_csv_row(lower(rows[0]));
    if (!header.empty() && header[0] == "t")
      format = CsvFormat::DatasetCsv;
    else if (header.size() >= 2 && header[1] == "price")
      format = CsvFormat::PriceCsv;
    else if (header.size() >= 2 && (header[1] == "return" || header[1] == "returns"))
      format = CsvFormat::ReturnsCsv;
    else
      throw ParseError(path.string() + ": unrecognized header '" + rows[0] +
                       "' (expected t,y[,true_sigma] or date,price or date,return)");
  }
  return load_returns(path, *format);
}

void save_dataset(std::ostream& out, const TimeSeries& ts) {
  const bool with_sigma = ts.true_sigma.has_value();
  out << (with_sigma ? "t,y,true_sigma\n" : "t,y\n");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out << fmt_double(ts.times[i]) << ',' << fmt_double(ts.values[i]);
    if (with_sigma) out << ',' << fmt_double((*ts.true_sigma)[i]);
    out << '\n';
  }
}

void save_dataset(const std::filesystem::path& path, const TimeSeries& ts) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  save_dataset(out, ts);
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<Window> rolling_windows(const TimeSeries& ts, std::size_t window,
                                    std::size_t step) {
  if (window > ts.size())
    throw WindowTooLarge("rolling_windows: window " + std::to_string(window) +
                         " exceeds series length " + std::to_string(ts.size()));
  step = std::max<std::size_t>(step, 1);
  std::vector<Window> out;
  for (std::size_t origin = window; origin < ts.size(); origin += step)
    out.push_back(Window{origin - window, origin, origin});
  return out;
}

}  // namespace gcpv
