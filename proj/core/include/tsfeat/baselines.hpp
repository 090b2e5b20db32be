#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsfeat/timeseries.hpp"

namespace tsfeat {

// Both distances are sums of squared differences (no square root). 1-NN
// rankings are unchanged by the monotone transform.

/// Throws std::invalid_argument on a length mismatch.
double euclidean_dist(std::span<const double> x, std::span<const double> y);

/// DTW with steps (1,0), (0,1), (1,1) and a Sakoe-Chiba band |i - j| <= window.
/// No window means unconstrained. Throws std::invalid_argument when the band
/// excludes the terminal cell.
double dtw_dist(std::span<const double> x, std::span<const double> y, std::optional<std::size_t> window = {});

/// Band width in samples for a window given as a percent of the length.
std::size_t window_from_percent(double r_percent, std::size_t length);

enum class BaselineKind { euclidean, dtw_full, dtw_window };

struct BaselineConfig {
  BaselineKind kind = BaselineKind::euclidean;
  double r_percent = 100.0;  // used by dtw_window; in [0, 100]

  double distance(std::span<const double> x, std::span<const double> y) const;
};

/// Label of the nearest training series; exact ties go to the lowest index.
const std::string& knn1_classify(std::span<const TimeSeries> train, std::span<const double> query,
                                 const BaselineConfig& cfg);

/// Test misclassification of 1-NN; queries are classified in parallel.
double knn1_error_rate(std::span<const TimeSeries> train, std::span<const TimeSeries> test,
                       const BaselineConfig& cfg, unsigned threads = 0);

struct WindowSearch {
  double best_r_percent = 0.0;
  std::vector<double> loocv_accuracy;  // indexed like the grid
  std::vector<double> grid;
};

/// Leave-one-out 1-NN accuracy on `train` for each r in `grid`; returns the
/// smallest r reaching the maximum. Default grid is 0..100 step 1.
WindowSearch learn_best_window(std::span<const TimeSeries> train, std::vector<double> grid = {},
                               unsigned threads = 0);

}  // namespace tsfeat
