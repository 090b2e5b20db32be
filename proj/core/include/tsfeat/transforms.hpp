#pragma once

#include <optional>
#include <span>
#include <vector>

namespace tsfeat {

// Descriptive statistics shared by the feature catalog. Standard deviation
// always uses the N-1 denominator.

double mean(std::span<const double> x);
double sample_variance(std::span<const double> x);
double sample_std(std::span<const double> x);

/// Mean of the two central order statistics for even lengths.
double median(std::span<const double> x);

/// True when every element compares equal to the first.
bool is_constant(std::span<const double> x);

/// Centers to mean 0 and scales to unit sample standard deviation.
/// Returns nullopt (domain error) for a constant series; throws
/// std::invalid_argument for fewer than two values.
std::optional<std::vector<double>> zscore(std::span<const double> x);

/// out[t] = x[0] + ... + x[t]. Throws std::invalid_argument on empty input.
std::vector<double> cumulative_sum(std::span<const double> x);

}  // namespace tsfeat
