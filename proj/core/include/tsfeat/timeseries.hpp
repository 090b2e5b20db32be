#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsfeat {

/// One labeled, uniformly sampled univariate series. Immutable after
/// construction; all values are finite and there are at least two of them.
class TimeSeries {
 public:
  /// Throws std::invalid_argument on fewer than two values or a non-finite value.
  TimeSeries(std::string id, std::string label, std::vector<double> values);

  const std::string& id() const { return id_; }
  const std::string& label() const { return label_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::string id_;
  std::string label_;
  std::vector<double> values_;
};

/// Named train/test collection. `classes()` is the sorted union of labels
/// in both partitions.
class Dataset {
 public:
  Dataset(std::string name, std::vector<TimeSeries> train, std::vector<TimeSeries> test);

  const std::string& name() const { return name_; }
  const std::vector<TimeSeries>& train() const { return train_; }
  const std::vector<TimeSeries>& test() const { return test_; }
  const std::vector<std::string>& classes() const { return classes_; }

  /// Labels that occur in the test partition but never in train.
  std::vector<std::string> unseen_test_labels() const;

  /// Common series length, or 0 when lengths differ.
  std::size_t series_length() const;

 private:
  std::string name_;
  std::vector<TimeSeries> train_;
  std::vector<TimeSeries> test_;
  std::vector<std::string> classes_;
};

/// Sorted, de-duplicated labels of `series`.
std::vector<std::string> sorted_labels(std::span<const TimeSeries> series);

}  // namespace tsfeat
