#include "tsfeat/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "tsfeat/detail/parallel.hpp"

namespace tsfeat {

double euclidean_dist(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("euclidean_dist: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

double dtw_dist(std::span<const double> x, std::span<const double> y, std::optional<std::size_t> window) {
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  if (n == 0 || m == 0) throw std::invalid_argument("dtw_dist: empty series");
  const std::size_t w = window.value_or(std::max(n, m));
  const std::size_t gap = n > m ? n - m : m - n;
  if (gap > w) throw std::invalid_argument("dtw_dist: warping window excludes the terminal cell");

  constexpr double inf = std::numeric_limits<double>::infinity();
  // prev/cur hold rows i-1 and i, column j at index j + 1. Only the band
  // is written; the cells bordering it are kept at infinity.
  std::vector<double> prev(m + 2, inf);
  std::vector<double> cur(m + 2, inf);
  prev[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j_lo = i > w ? i - w : 0;
    const std::size_t j_hi = std::min(m - 1, i + w);
    cur[j_lo] = inf;
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      const double d = x[i] - y[j];
      const double best = std::min({prev[j], prev[j + 1], cur[j]});
      cur[j + 1] = d * d + best;
    }
    cur[j_hi + 2] = inf;
    std::swap(prev, cur);
  }
  return prev[m];
}

std::size_t window_from_percent(double r_percent, std::size_t length) {
  if (!(r_percent >= 0.0 && r_percent <= 100.0)) throw std::invalid_argument("warping window must be in [0, 100] percent");
  return static_cast<std::size_t>(std::llround(r_percent / 100.0 * static_cast<double>(length)));
}

double BaselineConfig::distance(std::span<const double> x, std::span<const double> y) const {
  switch (kind) {
    case BaselineKind::euclidean: return euclidean_dist(x, y);
    case BaselineKind::dtw_full: return dtw_dist(x, y);
    case BaselineKind::dtw_window: return dtw_dist(x, y, window_from_percent(r_percent, std::max(x.size(), y.size())));
  }
  throw std::logic_error("unknown baseline kind");
}

const std::string& knn1_classify(std::span<const TimeSeries> train, std::span<const double> query,
                                 const BaselineConfig& cfg) {
  if (train.empty()) throw std::invalid_argument("knn1_classify: empty training set");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < train.size(); ++i) {
    const double d = cfg.distance(train[i].values(), query);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return train[best].label();
}

double knn1_error_rate(std::span<const TimeSeries> train, std::span<const TimeSeries> test, const BaselineConfig& cfg,
                       unsigned threads) {
  if (test.empty()) throw std::invalid_argument("knn1_error_rate: empty test set");
  std::vector<unsigned char> wrong(test.size(), 0);
  detail::parallel_for(test.size(), threads, [&](std::size_t q) {
    wrong[q] = knn1_classify(train, test[q].values(), cfg) != test[q].label();
  });
  const auto n_wrong = std::count(wrong.begin(), wrong.end(), 1);
  return static_cast<double>(n_wrong) / static_cast<double>(test.size());
}

WindowSearch learn_best_window(std::span<const TimeSeries> train, std::vector<double> grid, unsigned threads) {
  if (train.size() < 2) throw std::invalid_argument("learn_best_window: need at least two training series");
  if (grid.empty()) {
    for (int r = 0; r <= 100; ++r) grid.push_back(r);
  }
  const std::size_t n = train.size();
  std::size_t length = 0;
  for (const auto& s : train) length = std::max(length, s.size());

  // Distances depend on r only through the band width; widths at or beyond
  // the length are all unconstrained.
  std::map<std::size_t, double> accuracy_by_width;
  WindowSearch out;
  out.grid = grid;
  for (double r : grid) {
    const std::size_t w = std::min(window_from_percent(r, length), length);
    if (!accuracy_by_width.contains(w)) {
      std::vector<double> dist(n * n, 0.0);
      detail::parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) dist[i * n + j] = dtw_dist(train[i].values(), train[j].values(), w);
      });
      std::size_t correct = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = n;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          const double d = i < j ? dist[i * n + j] : dist[j * n + i];
          if (d < best_d) {
            best_d = d;
            best = j;
          }
        }
        if (best < n && train[best].label() == train[i].label()) ++correct;
      }
      accuracy_by_width[w] = static_cast<double>(correct) / static_cast<double>(n);
    }
    out.loocv_accuracy.push_back(accuracy_by_width[w]);
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (out.loocv_accuracy[k] > out.loocv_accuracy[best] ||
        (out.loocv_accuracy[k] == out.loocv_accuracy[best] && grid[k] < grid[best])) {
      best = k;
    }
  }
  out.best_r_percent = grid[best];
  return out;
}

}  // namespace tsfeat
