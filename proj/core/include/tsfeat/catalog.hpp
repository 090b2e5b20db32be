#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsfeat/feature_value.hpp"

namespace tsfeat {

enum class FeatureFamily : std::uint8_t {
  distribution,
  correlation,
  spectral,
  stationarity,
  entropy,
  motif,
  trend,
  model_fit,
};

enum class CostClass : std::uint8_t { linear, superlinear };

std::string_view to_string(FeatureFamily family);
std::string_view to_string(CostClass cost);

struct FeatureDescriptor {
  std::string id;
  FeatureFamily family = FeatureFamily::distribution;
  std::map<std::string, double> params;
  CostClass cost_class = CostClass::linear;
  /// False when a constant series is a legitimate input (the feature
  /// never yields a domain error on it).
  bool variance_normalized = true;
};

/// Maps a series to a value. May throw on violated preconditions; the
/// catalog converts that into a domain-error special.
using FeatureFn = std::function<FeatureValue(std::span<const double>)>;

/// Ordered collection of named features.
class Catalog {
 public:
  struct Entry {
    FeatureDescriptor descriptor;
    FeatureFn fn;
  };

  /// Throws std::invalid_argument on a duplicate id.
  void add(FeatureDescriptor descriptor, FeatureFn fn);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool contains(std::string_view id) const;
  /// Throws std::out_of_range for an unknown id.
  const Entry& at(std::string_view id) const;
  /// Position of `id`; throws std::out_of_range when absent.
  std::size_t index_of(std::string_view id) const;

  /// Evaluates feature `i`; exceptions and non-finite results become specials.
  FeatureValue evaluate(std::size_t i, std::span<const double> x) const;

  /// Sub-catalog with the given ids, in the order given.
  Catalog restrict_to(std::span<const std::string> ids) const;

  std::vector<std::string> ids() const;

  /// FNV-1a over ids and parameters, hex encoded. Changes whenever the
  /// catalog contents change.
  std::string version_hash() const;

 private:
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// The default catalog (57 features across all eight families).
const Catalog& default_catalog();

}  // namespace tsfeat
