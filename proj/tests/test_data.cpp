#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gcpv/data.hpp"
#include "gcpv/errors.hpp"

using namespace gcpv;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("simulate_trig") {
  const TimeSeries ts = simulate_trig(1);
  CHECK(ts.size() == 201);
  REQUIRE(ts.true_sigma.has_value());
  CHECK((*ts.true_sigma)[0] == doctest::Approx(1.0));
  CHECK(ts.times.front() == 0.0);
  CHECK(ts.times.back() == doctest::Approx(4.0));
  for (double s : *ts.true_sigma) {
    CHECK(s >= 0.0);
    CHECK(s <= 2.0);
  }
  // pure function of the seed
  const TimeSeries again = simulate_trig(1);
  CHECK(again.values == ts.values);
  const TimeSeries other = simulate_trig(2);
  CHECK(other.values != ts.values);
  CHECK(other.true_sigma == ts.true_sigma);  // sigma path is deterministic
}

TEST_CASE("simulate_jump") {
  const TimeSeries ts = simulate_jump(9);
  CHECK(ts.size() == 61);
  REQUIRE(ts.true_sigma.has_value());
  for (double s : *ts.true_sigma) CHECK((s == 0.1 || s == 7.0));
  CHECK((*ts.true_sigma)[0] == 0.1);
  CHECK((*ts.true_sigma)[20] == 7.0);  // t = 2.0
  CHECK((*ts.true_sigma)[39] == 7.0);  // t = 3.9
  CHECK((*ts.true_sigma)[40] == 0.1);  // t = 4.0
  CHECK(simulate_jump(9).values == ts.values);

  const JumpConfig late{0.1, 7.0, 3.0, 5.0};
  const TimeSeries moved = simulate_jump(9, late);
  CHECK((*moved.true_sigma)[20] == 0.1);
  CHECK((*moved.true_sigma)[30] == 7.0);
}

TEST_CASE("load_returns from prices") {
  SUBCASE("log ratio of e") {
    const auto p = write_temp("gcpv_prices1.csv",
                              "date,price\n2020-01-01,1.0\n2020-01-02,2.718281828459045\n");
    const TimeSeries ts = load_returns(p, CsvFormat::PriceCsv);
    CHECK(ts.size() == 1);
    CHECK(ts.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ts.times[0] == 0.0);
    CHECK(!ts.true_sigma);
  }
  SUBCASE("constant prices give zero returns") {
    const auto p = write_temp("gcpv_prices2.csv",
                              "date,price\n2020-01-01,100\n2020-01-02,100\n2020-01-03,100\n");
    const TimeSeries ts = load_returns(p, CsvFormat::PriceCsv);
    CHECK(ts.values == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("blank price names the row") {
    const auto p = write_temp("gcpv_prices3.csv",
                              "date,price\n2020-01-01,100\n2020-01-02,\n");
    try {
      load_returns(p, CsvFormat::PriceCsv);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
  }
  SUBCASE("non-positive prices are rejected") {
    const auto p = write_temp("gcpv_prices4.csv",
                              "date,price\n2020-01-01,100\n2020-01-02,-2\n");
    CHECK_THROWS_AS(load_returns(p, CsvFormat::PriceCsv), NonPositivePrice);
  }
  SUBCASE("output length is rows minus one") {
    std::string content = "date,price\n";
    for (int i = 0; i < 10; ++i) content += "2020-01-0" + std::to_string(i) + ",1.5\n";
    const auto p = write_temp("gcpv_prices5.csv", content);
    CHECK(load_returns(p, CsvFormat::PriceCsv).size() == 9);
  }
}

TEST_CASE("returns passthrough") {
  const auto p = write_temp("gcpv_rets.csv", "date,return\na,0.5\nb,-0.25\n");
  const TimeSeries ts = load_returns(p, CsvFormat::ReturnsCsv);
  CHECK(ts.values == std::vector<double>{0.5, -0.25});
  CHECK(ts.times == std::vector<double>{0.0, 1.0});
}

TEST_CASE("dataset roundtrip and sniffing") {
  TimeSeries ts = simulate_jump(5);
  const auto p = std::filesystem::temp_directory_path() / "gcpv_jump.csv";
  save_dataset(p, ts);

  const TimeSeries by_format = load_returns(p, CsvFormat::DatasetCsv);
  const TimeSeries sniffed = load_series(p);
  CHECK(by_format.values == ts.values);
  CHECK(sniffed.values == ts.values);
  REQUIRE(sniffed.true_sigma.has_value());
  CHECK(*sniffed.true_sigma == *ts.true_sigma);
  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(sniffed.times[i] == doctest::Approx(ts.times[i]).epsilon(1e-15));
}

TEST_CASE("sniffer recognizes financial headers and rejects junk") {
  const auto prices = write_temp("gcpv_sniff1.csv", "Date,Price\nx,1\ny,2\n");
  CHECK(load_series(prices).size() == 1);
  const auto junk = write_temp("gcpv_sniff2.csv", "a,b\n1,2\n");
  CHECK_THROWS_AS(load_series(junk), ParseError);
}

TEST_CASE("rolling windows") {
  TimeSeries ts;
  const auto make = [&](std::size_t n) {
    ts.times.clear();
    ts.values.clear();
    for (std::size_t i = 0; i < n; ++i) {
      ts.times.push_back(static_cast<double>(i));
      ts.values.push_back(0.0);
    }
  };

  SUBCASE("boundary: one window") {
    make(121);
    const auto w = rolling_windows(ts, 120, 7);
    REQUIRE(w.size() == 1);
    CHECK(w[0].begin == 0);
    CHECK(w[0].end == 120);
    CHECK(w[0].forecast_origin == 120);
  }
  SUBCASE("origins never reach past the series") {
    make(134);
    const auto w = rolling_windows(ts, 120, 7);
    REQUIRE(w.size() == 2);
    CHECK(w[0].forecast_origin == 120);
    CHECK(w[1].forecast_origin == 127);
  }
  SUBCASE("window equal to the length yields nothing; larger throws") {
    make(50);
    CHECK(rolling_windows(ts, 50, 7).empty());
    CHECK_THROWS_AS(rolling_windows(ts, 51, 7), WindowTooLarge);
  }
  SUBCASE("every window is a contiguous slice of exact length (property)") {
    make(533);
    for (const std::size_t step : {1u, 5u, 7u, 30u}) {
      for (const auto& w : rolling_windows(ts, 120, step)) {
        CHECK(w.end - w.begin == 120);
        CHECK(w.forecast_origin == w.end);
        CHECK(w.end < ts.size() + 1);
      }
    }
  }
}
