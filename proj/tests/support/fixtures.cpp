#include "fixtures.hpp"

namespace fixtures {

Problem gaussian_classes(std::mt19937_64& rng, std::size_t classes, std::size_t per_class, std::size_t d,
                         double separation) {
  std::normal_distribution<double> g(0.0, 1.0);
  Problem p;
  for (std::size_t c = 0; c < classes; ++c) {
    std::vector<double> centre(d);
    for (auto& v : centre) v = separation * g(rng);
    for (std::size_t i = 0; i < per_class; ++i) {
      std::vector<double> row(d);
      for (std::size_t k = 0; k < d; ++k) row[k] = centre[k] + g(rng);
      p.rows.push_back(row);
      p.labels.push_back("c" + std::to_string(c));
    }
  }
  return p;
}

tsfeat::FeatureMatrix noisy_feature_matrix(std::mt19937_64& rng, std::size_t classes, std::size_t per_class,
                                           std::size_t features) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::string> ids, labels, cols;
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      ids.push_back("s" + std::to_string(ids.size()));
      labels.push_back("c" + std::to_string(c));
    }
  }
  for (std::size_t f = 0; f < features; ++f) cols.push_back("f" + std::to_string(f));
  tsfeat::FeatureMatrix m(ids, labels, cols);
  for (std::size_t f = 0; f < features; ++f) {
    const double signal = 2.0 / static_cast<double>(f + 1);
    std::vector<double> shift(classes);
    for (auto& s : shift) s = signal * g(rng);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      m.at(i, f) = tsfeat::FeatureValue::real(shift[i / per_class] + g(rng));
    }
  }
  return m;
}

tsfeat::FeatureMatrix matrix_from_columns(const std::vector<std::string>& labels,
                                          const std::vector<std::pair<std::string, std::vector<double>>>& columns) {
  std::vector<std::string> ids, cols;
  for (std::size_t i = 0; i < labels.size(); ++i) ids.push_back("s" + std::to_string(i));
  for (const auto& [id, _] : columns) cols.push_back(id);
  tsfeat::FeatureMatrix m(ids, labels, cols);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t i = 0; i < labels.size(); ++i) m.at(i, j) = tsfeat::FeatureValue::real(columns[j].second[i]);
  }
  return m;
}

tsfeat::Dataset cbf(std::size_t train_per_class, std::size_t test_per_class, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const double scale = static_cast<double>(length) / 128.0;
  std::uniform_real_distribution<double> start(16 * scale, 32 * scale);
  std::uniform_real_distribution<double> span(32 * scale, 96 * scale);

  auto make = [&](int shape) {
    const double a = start(rng);
    const double b = a + span(rng);
    const double amp = 6.0 + g(rng);
    std::vector<double> x(length);
    for (std::size_t t = 0; t < length; ++t) {
      const double tt = static_cast<double>(t);
      double s = 0.0;
      if (tt >= a && tt <= b) {
        s = shape == 0 ? 1.0 : shape == 1 ? (tt - a) / (b - a) : (b - tt) / (b - a);
      }
      x[t] = amp * s + g(rng);
    }
    return x;
  };
  auto split = [&](std::size_t per_class, const char* part) {
    std::vector<tsfeat::TimeSeries> out;
    for (std::size_t i = 0; i < per_class; ++i) {
      for (int shape = 0; shape < 3; ++shape) {
        out.emplace_back("cbf/" + std::string(part) + "/" + std::to_string(out.size()), std::to_string(shape + 1),
                         make(shape));
      }
    }
    return out;
  };
  auto train = split(train_per_class, "train");
  auto test = split(test_per_class, "test");
  return tsfeat::Dataset("cbf", std::move(train), std::move(test));
}

}  // namespace fixtures
