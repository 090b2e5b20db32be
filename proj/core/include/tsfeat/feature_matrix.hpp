#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsfeat/catalog.hpp"
#include "tsfeat/feature_value.hpp"
#include "tsfeat/timeseries.hpp"

namespace tsfeat {

/// Series x feature table. Rows carry the series id and label; columns carry
/// the feature id. Row and column ids are unique.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  /// Cells start as domain-error specials. Throws on duplicate ids or a
  /// label/id length mismatch.
  FeatureMatrix(std::vector<std::string> series_ids, std::vector<std::string> labels,
                std::vector<std::string> feature_ids);

  std::size_t rows() const { return series_ids_.size(); }
  std::size_t cols() const { return feature_ids_.size(); }

  const std::vector<std::string>& series_ids() const { return series_ids_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::string>& feature_ids() const { return feature_ids_; }

  const FeatureValue& at(std::size_t row, std::size_t col) const { return cells_[row * cols() + col]; }
  FeatureValue& at(std::size_t row, std::size_t col) { return cells_[row * cols() + col]; }

  /// Throws std::out_of_range for an unknown feature id.
  std::size_t column_index(const std::string& feature_id) const;

  /// Row subset, keeping column order.
  FeatureMatrix select_rows(std::span<const std::size_t> rows) const;
  /// Column subset in the given order; throws for unknown ids.
  FeatureMatrix select_columns(std::span<const std::string> feature_ids) const;

  /// Dense real values of the given columns. Throws std::domain_error if any
  /// selected cell is special.
  std::vector<std::vector<double>> real_rows(std::span<const std::size_t> cols) const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::vector<std::string> series_ids_;
  std::vector<std::string> labels_;
  std::vector<std::string> feature_ids_;
  std::vector<FeatureValue> cells_;
};

/// Evaluates every catalog feature on every series. Failures are isolated to
/// their cell. `threads` = 0 picks the hardware concurrency; the result is
/// identical for every thread count.
FeatureMatrix compute_matrix(const Catalog& catalog, std::span<const TimeSeries> series,
                             unsigned threads = 0);

/// Ids of columns with no special cell among `rows` (all rows when omitted).
std::vector<std::string> filter_special_values(const FeatureMatrix& m,
                                               std::optional<std::span<const std::size_t>> rows = {});

/// CSV cache: header `series_id,label,<feature ids>`, specials as `NA`,
/// reals in shortest round-trip decimal form.
void write_matrix_csv(std::ostream& out, const FeatureMatrix& m);
/// Throws std::runtime_error on a malformed file.
FeatureMatrix read_matrix_csv(std::istream& in);

}  // namespace tsfeat
