#include <doctest.h>

#include <stdexcept>

#include <tsfeat/catalog.hpp>
#include <tsfeat/feature_matrix.hpp>
#include <tsfeat/features.hpp>

#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "support/oracles.hpp"

using namespace tsfeat;

namespace {

std::vector<TimeSeries> noise_series(std::size_t count, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TimeSeries> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.emplace_back("s" + std::to_string(i), i % 2 ? "b" : "a", oracle::gaussian(rng, length));
  }
  return out;
}

}  // namespace

TEST_CASE("1 series x 1 feature") {
  const std::vector<std::string> ids{"trev_tau1"};
  const auto cat = default_catalog().restrict_to(ids);
  const std::vector<TimeSeries> s{{"x", "a", {0, 1, 0, 2}}};
  const auto m = compute_matrix(cat, s);
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 1);
  CHECK(m.at(0, 0) == features::trev(s[0].values(), 1));
  CHECK(m.series_ids() == std::vector<std::string>{"x"});
  CHECK(m.labels() == std::vector<std::string>{"a"});
}

TEST_CASE("threaded computation equals serial cell by cell") {
  const auto series = noise_series(37, 180, 31);
  const auto serial = compute_matrix(default_catalog(), series, 1);
  for (unsigned threads : {2u, 3u, 8u, 0u}) CHECK(compute_matrix(default_catalog(), series, threads) == serial);
  // and equals direct evaluation
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = 0; j < default_catalog().size(); ++j) {
      REQUIRE(serial.at(i, j) == default_catalog().evaluate(j, series[i].values()));
    }
  }
}

TEST_CASE("a constant row leaves exactly the features that accept constant input") {
  auto series = noise_series(6, 120, 32);
  series.emplace_back("flat", "a", std::vector<double>(120, 3.25));
  const auto m = compute_matrix(default_catalog(), series);
  const std::size_t flat = m.rows() - 1;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto& d = default_catalog()[j].descriptor;
    CAPTURE(d.id);
    CHECK(m.at(flat, j).is_special() == d.variance_normalized);
  }
  // enumerated by hand from each feature's preconditions
  std::set<std::string> expected{"mean", "std", "entropy_hist_b5", "entropy_hist_b10", "lz76"};
  for (const auto& p : features::motif_patterns()) expected.insert("motif_" + p);
  const auto kept = filter_special_values(m);
  CHECK(std::set<std::string>(kept.begin(), kept.end()) == expected);
  CHECK(kept.size() == 21);

  // restricting to the noise rows keeps everything
  std::vector<std::size_t> rows{0, 1, 2, 3, 4, 5};
  CHECK(filter_special_values(m, std::span<const std::size_t>(rows)).size() == m.cols());
}

TEST_CASE("filter_special_values") {
  FeatureMatrix m({"r0", "r1"}, {"a", "b"}, {"f", "g", "h"});
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = FeatureValue::real(double(i + j));
  }
  CHECK(filter_special_values(m) == std::vector<std::string>{"f", "g", "h"});
  m.at(1, 1) = FeatureValue::special(SpecialKind::infinite);
  CHECK(filter_special_values(m) == std::vector<std::string>{"f", "h"});
  const std::vector<std::size_t> first{0};
  CHECK(filter_special_values(m, std::span<const std::size_t>(first)).size() == 3);
  FeatureMatrix empty_ok({"r0"}, {"a"}, {"f"});
  CHECK(filter_special_values(empty_ok).empty());
}

TEST_CASE("matrix construction and slicing") {
  CHECK_THROWS_AS(FeatureMatrix({"a", "a"}, {"x", "y"}, {"f"}), std::invalid_argument);
  CHECK_THROWS_AS(FeatureMatrix({"a"}, {"x"}, {"f", "f"}), std::invalid_argument);
  CHECK_THROWS_AS(FeatureMatrix({"a"}, {"x", "y"}, {"f"}), std::invalid_argument);

  FeatureMatrix m({"r0", "r1", "r2"}, {"a", "b", "a"}, {"f", "g"});
  for (std::size_t i = 0; i < 3; ++i) {
    m.at(i, 0) = FeatureValue::real(double(i));
    m.at(i, 1) = FeatureValue::real(10.0 + i);
  }
  CHECK(m.column_index("g") == 1);
  CHECK_THROWS_AS(m.column_index("nope"), std::out_of_range);
  const std::vector<std::string> g{"g"};
  const auto mg = m.select_columns(g);
  CHECK(mg.cols() == 1);
  CHECK(mg.at(2, 0).value() == 12.0);
  const std::vector<std::size_t> rows{2, 0};
  const auto mr = m.select_rows(rows);
  CHECK(mr.series_ids() == std::vector<std::string>{"r2", "r0"});
  CHECK(mr.at(0, 1).value() == 12.0);
  const std::vector<std::size_t> cols{1, 0};
  CHECK(m.real_rows(cols)[1] == std::vector<double>{11.0, 1.0});
  m.at(1, 0) = FeatureValue::domain_error();
  CHECK_THROWS_AS(m.real_rows(cols), std::domain_error);
}

TEST_CASE("csv cache round-trips bit-exactly") {
  auto series = noise_series(9, 64, 33);
  series.emplace_back("flat", "label with space", std::vector<double>(64, 1.0 / 3.0));
  const auto m = compute_matrix(default_catalog(), series);
  std::stringstream buf;
  write_matrix_csv(buf, m);
  const std::string text = buf.str();
  CHECK(text.starts_with("series_id,label,mean,std,"));
  CHECK(text.find(",NA") != std::string::npos);
  const auto back = read_matrix_csv(buf);
  CHECK(back == m);

  // awkward doubles
  FeatureMatrix odd({"r"}, {"a"}, {"f", "g", "h", "k"});
  odd.at(0, 0) = FeatureValue::real(0.1 + 0.2);
  odd.at(0, 1) = FeatureValue::real(std::numeric_limits<double>::denorm_min());
  odd.at(0, 2) = FeatureValue::real(-1.7976931348623157e308);
  odd.at(0, 3) = FeatureValue::special(SpecialKind::not_a_number);
  std::stringstream buf2;
  write_matrix_csv(buf2, odd);
  const auto odd_back = read_matrix_csv(buf2);
  CHECK(odd_back.at(0, 0).value() == 0.1 + 0.2);
  CHECK(odd_back.at(0, 1).value() == std::numeric_limits<double>::denorm_min());
  CHECK(odd_back.at(0, 2).value() == -1.7976931348623157e308);
  CHECK(odd_back.at(0, 3).is_special());

  FeatureMatrix comma({"a,b"}, {"x"}, {"f"});
  std::stringstream sink;
  CHECK_THROWS_AS(write_matrix_csv(sink, comma), std::invalid_argument);
}

TEST_CASE("malformed csv is rejected") {
  for (const char* text : {"", "id,label\n", "series_id,label,f\nr,a\n", "series_id,label,f\nr,a,zz\n",
                           "series_id,label,f\nr,a,1,2\n"}) {
    std::istringstream in(text);
    CAPTURE(text);
    CHECK_THROWS_AS(read_matrix_csv(in), std::runtime_error);
  }
}
