#include "tsfeat/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tsfeat {

TimeSeries::TimeSeries(std::string id, std::string label, std::vector<double> values)
    : id_(std::move(id)), label_(std::move(label)), values_(std::move(values)) {
  if (values_.size() < 2) {
    throw std::invalid_argument("time series '" + id_ + "' needs at least 2 values");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("time series '" + id_ + "' contains a non-finite value");
    }
  }
}

std::vector<std::string> sorted_labels(std::span<const TimeSeries> series) {
  std::set<std::string> labels;
  for (const auto& s : series) labels.insert(s.label());
  return {labels.begin(), labels.end()};
}

Dataset::Dataset(std::string name, std::vector<TimeSeries> train, std::vector<TimeSeries> test)
    : name_(std::move(name)), train_(std::move(train)), test_(std::move(test)) {
  std::set<std::string> labels;
  for (const auto& s : train_) labels.insert(s.label());
  for (const auto& s : test_) labels.insert(s.label());
  classes_.assign(labels.begin(), labels.end());
}

std::vector<std::string> Dataset::unseen_test_labels() const {
  const auto seen = sorted_labels(train_);
  std::vector<std::string> unseen;
  for (const auto& label : sorted_labels(test_)) {
    if (!std::binary_search(seen.begin(), seen.end(), label)) unseen.push_back(label);
  }
  return unseen;
}

std::size_t Dataset::series_length() const {
  std::size_t n = 0;
  for (const auto* part : {&train_, &test_}) {
    for (const auto& s : *part) {
      if (n == 0) {
        n = s.size();
      } else if (s.size() != n) {
        return 0;
      }
    }
  }
  return n;
}

}  // namespace tsfeat
