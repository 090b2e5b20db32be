#pragma once

#include <tsfeat/feature_matrix.hpp>
#include <tsfeat/timeseries.hpp>

#include <random>
#include <string>
#include <vector>

namespace fixtures {

struct Problem {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
};

/// `classes` isotropic Gaussian blobs in d dimensions, centres drawn with
/// spread `separation`.
Problem gaussian_classes(std::mt19937_64& rng, std::size_t classes, std::size_t per_class, std::size_t d,
                         double separation);

/// Matrix with `features` real columns of varying usefulness.
tsfeat::FeatureMatrix noisy_feature_matrix(std::mt19937_64& rng, std::size_t classes, std::size_t per_class,
                                           std::size_t features);

tsfeat::FeatureMatrix matrix_from_columns(const std::vector<std::string>& labels,
                                          const std::vector<std::pair<std::string, std::vector<double>>>& columns);

/// Cylinder-bell-funnel series (Saito's generator).
tsfeat::Dataset cbf(std::size_t train_per_class, std::size_t test_per_class, std::size_t length, std::uint64_t seed);

}  // namespace fixtures
