#include <doctest.h>

#include <stdexcept>

#include <tsfeat/baselines.hpp>

#include <cmath>
#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace tsfeat;

namespace {

using V = std::vector<double>;

// Leave-one-out 1-NN accuracy written out longhand.
double loocv_accuracy(const std::vector<TimeSeries>& train, std::size_t w) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < train.size(); ++i) {
    double best = INFINITY;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < train.size(); ++j) {
      if (j == i) continue;
      const double d = dtw_dist(train[i].values(), train[j].values(), w);
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    hits += train[arg].label() == train[i].label();
  }
  return static_cast<double>(hits) / static_cast<double>(train.size());
}

}  // namespace

TEST_CASE("euclidean distance") {
  CHECK(euclidean_dist(V{0, 0}, V{3, 4}) == 25.0);
  std::mt19937_64 rng(61);
  const auto x = oracle::gaussian(rng, 30), y = oracle::gaussian(rng, 30);
  CHECK(euclidean_dist(x, x) == 0.0);
  CHECK(euclidean_dist(x, y) == euclidean_dist(y, x));
  CHECK(euclidean_dist(x, y) > 0.0);
  CHECK_THROWS_AS(euclidean_dist(V{1, 2}, V{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("dtw distance") {
  CHECK(dtw_dist(V{1, 2, 3}, V{1, 2, 2, 3}) == 0.0);
  CHECK(dtw_dist(V{1, 2, 3}, V{1, 2, 2, 3}, 1) == 0.0);
  CHECK(dtw_dist(V{0, 0, 1}, V{0, 1, 1}) == 0.0);
  CHECK(dtw_dist(V{0, 0, 1}, V{0, 1, 1}, 0) == 1.0);
  CHECK(dtw_dist(V{0, 0, 1}, V{0, 1, 1}, 1) == 0.0);
  std::mt19937_64 rng(62);
  const auto x = oracle::gaussian(rng, 40), y = oracle::gaussian(rng, 35);
  CHECK(dtw_dist(x, x) == 0.0);
  CHECK(dtw_dist(x, y) == dtw_dist(y, x));
  CHECK(dtw_dist(x, y, 7) == dtw_dist(y, x, 7));
  CHECK(dtw_dist(x, y) >= 0.0);
  CHECK_THROWS_AS(dtw_dist(V{1, 2, 3}, V{1, 2, 3, 4, 5}, 1), std::invalid_argument);
  CHECK_NOTHROW(dtw_dist(V{1, 2, 3}, V{1, 2, 3, 4, 5}, 2));
}

TEST_CASE("full dtw <= banded <= euclidean") {
  std::mt19937_64 rng(63);
  for (int rep = 0; rep < 50; ++rep) {
    const auto x = oracle::gaussian(rng, 50), y = oracle::gaussian(rng, 50);
    const double full = dtw_dist(x, y), band = dtw_dist(x, y, 5), euc = euclidean_dist(x, y);
    CHECK(full <= band);
    CHECK(band <= euc);
  }
}

TEST_CASE("window width from percent") {
  CHECK(window_from_percent(0, 152) == 0);
  CHECK(window_from_percent(100, 152) == 152);
  CHECK(window_from_percent(3, 150) == 5);   // 4.5 rounds half away from zero
  CHECK(window_from_percent(1, 60) == 1);    // 0.6
  CHECK(window_from_percent(1, 40) == 0);    // 0.4
  CHECK_THROWS_AS(window_from_percent(-1, 10), std::invalid_argument);
  CHECK_THROWS_AS(window_from_percent(101, 10), std::invalid_argument);
}

TEST_CASE("1-NN classification and ties") {
  const std::vector<TimeSeries> train{{"0", "a", {0, 0, 0}}, {"1", "b", {2, 2, 2}}, {"2", "c", {5, 5, 5}}};
  const BaselineConfig euc{BaselineKind::euclidean};
  CHECK(knn1_classify(train, V{5, 5, 5}, euc) == "c");
  // equidistant from "a" and "b": lowest index wins
  CHECK(knn1_classify(train, V{1, 1, 1}, euc) == "a");
  const std::vector<TimeSeries> swapped{train[1], train[0], train[2]};
  CHECK(knn1_classify(swapped, V{1, 1, 1}, euc) == "b");
  const BaselineConfig dtw{BaselineKind::dtw_full};
  CHECK(knn1_classify(train, V{2, 2, 2}, dtw) == "b");
  CHECK_THROWS_AS(knn1_classify(std::vector<TimeSeries>{}, V{1, 2}, euc), std::invalid_argument);
}

TEST_CASE("1-NN ranking ignores a monotone transform of the distance") {
  const auto d = fixtures::cbf(10, 10, 64, 64);
  const BaselineConfig euc{BaselineKind::euclidean};
  for (const auto& q : d.test()) {
    double best = INFINITY;
    std::string label;
    for (const auto& t : d.train()) {
      const double root = std::sqrt(euclidean_dist(q.values(), t.values()));
      if (root < best) {
        best = root;
        label = t.label();
      }
    }
    CHECK(knn1_classify(d.train(), q.values(), euc) == label);
  }
}

TEST_CASE("parallel error rate equals serial") {
  const auto d = fixtures::cbf(8, 20, 64, 65);
  for (const auto kind : {BaselineKind::euclidean, BaselineKind::dtw_full, BaselineKind::dtw_window}) {
    const BaselineConfig cfg{kind, 10.0};
    const double serial = knn1_error_rate(d.train(), d.test(), cfg, 1);
    CHECK(knn1_error_rate(d.train(), d.test(), cfg, 4) == serial);
    std::size_t wrong = 0;
    for (const auto& q : d.test()) wrong += knn1_classify(d.train(), q.values(), cfg) != q.label();
    CHECK(serial == static_cast<double>(wrong) / d.test().size());
  }
}

TEST_CASE("best window search matches a longhand LOOCV") {
  const auto d = fixtures::cbf(6, 1, 48, 66);
  const std::vector<double> grid{0, 1, 2, 3, 5, 10, 20, 50, 100};
  const auto ws = learn_best_window(d.train(), grid, 3);
  REQUIRE(ws.loocv_accuracy.size() == grid.size());
  double best_acc = -1.0, best_r = -1.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double acc = loocv_accuracy(d.train(), window_from_percent(grid[k], 48));
    CHECK(ws.loocv_accuracy[k] == acc);
    if (acc > best_acc) {
      best_acc = acc;
      best_r = grid[k];
    }
  }
  CHECK(ws.best_r_percent == best_r);
  CHECK(ws.grid == grid);
  CHECK(learn_best_window(d.train()).grid.size() == 101);
}

TEST_CASE("perfect LOOCV at r = 0 gives r* = 0") {
  std::vector<TimeSeries> train;
  for (int i = 0; i < 4; ++i) {
    train.emplace_back("a" + std::to_string(i), "a", V{0, 0.1 * i, 0, 0});
    train.emplace_back("b" + std::to_string(i), "b", V{9, 9, 9 + 0.1 * i, 9});
  }
  const auto ws = learn_best_window(train);
  CHECK(ws.best_r_percent == 0.0);
  CHECK(ws.loocv_accuracy[0] == 1.0);
  CHECK_THROWS_AS(learn_best_window(std::vector<TimeSeries>{train[0]}), std::invalid_argument);
}

TEST_CASE("duplicated training set: each copy is its own nearest neighbour") {
  const auto d = fixtures::cbf(5, 1, 40, 67);
  auto doubled = d.train();
  for (const auto& s : d.train()) doubled.emplace_back(s.id() + "/copy", s.label(), std::vector<double>(s.values().begin(), s.values().end()));
  const std::vector<double> grid{0, 5, 10, 50};
  const auto ws = learn_best_window(doubled, grid);
  for (double acc : ws.loocv_accuracy) CHECK(acc == 1.0);
  CHECK(ws.best_r_percent == 0.0);
}

TEST_CASE("dtw property suites") {
  for (const auto& o : {props::dtw_matches_exhaustive_paths(), props::dtw_monotone_in_window(),
                        props::dtw_zero_window_is_euclidean()}) {
    INFO(o.name << ": " << o.detail);
    CHECK(o.pass);
  }
}
