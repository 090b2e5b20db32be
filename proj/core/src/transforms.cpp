#include "tsfeat/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tsfeat {

double mean(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean of an empty sequence");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("sample variance needs at least 2 values");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

double sample_std(std::span<const double> x) { return std::sqrt(sample_variance(x)); }

double median(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("median of an empty sequence");
  std::vector<double> v(x.begin(), x.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

std::optional<std::vector<double>> zscore(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("zscore needs at least 2 values");
  if (is_constant(x)) return std::nullopt;
  const double m = mean(x);
  const double s = sample_std(x);
  if (!(s > 0.0)) return std::nullopt;
  std::vector<double> z(x.size());
  std::transform(x.begin(), x.end(), z.begin(), [&](double v) { return (v - m) / s; });
  return z;
}

std::vector<double> cumulative_sum(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("cumulative sum of an empty sequence");
  std::vector<double> out(x.size());
  std::partial_sum(x.begin(), x.end(), out.begin());
  return out;
}

}  // namespace tsfeat
