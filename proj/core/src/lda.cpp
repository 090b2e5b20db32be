#include "tsfeat/lda.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

#include "numfmt.hpp"

namespace tsfeat {

double PairwiseRule::decision(std::span<const double> row) const {
  double g = offset;
  for (std::size_t j = 0; j < weights.size(); ++j) g += weights[j] * row[j];
  return g;
}

bool operator==(const PairwiseRule& a, const PairwiseRule& b) {
  return a.first == b.first && a.second == b.second && a.weights == b.weights && a.offset == b.offset;
}

LinearClassifier::LinearClassifier(std::vector<std::string> feature_ids, std::vector<std::string> class_order,
                                   std::vector<PairwiseRule> rules, double regularization)
    : feature_ids_(std::move(feature_ids)),
      class_order_(std::move(class_order)),
      rules_(std::move(rules)),
      regularization_(regularization) {
  const std::size_t c = class_order_.size();
  if (c < 2) throw std::invalid_argument("LinearClassifier: need at least two classes");
  if (rules_.size() != c * (c - 1) / 2) {
    throw std::invalid_argument("LinearClassifier: expected one rule per class pair");
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& r : rules_) {
    if (r.first >= c || r.second >= c || r.first == r.second) {
      throw std::invalid_argument("LinearClassifier: rule refers to an invalid class pair");
    }
    if (r.weights.size() != feature_ids_.size()) {
      throw std::invalid_argument("LinearClassifier: rule dimension differs from feature count");
    }
    pairs.emplace(std::min(r.first, r.second), std::max(r.first, r.second));
  }
  if (pairs.size() != rules_.size()) throw std::invalid_argument("LinearClassifier: duplicate class pair");
}

bool operator==(const LinearClassifier& a, const LinearClassifier& b) {
  return a.feature_ids_ == b.feature_ids_ && a.class_order_ == b.class_order_ && a.rules_ == b.rules_ &&
         a.regularization_ == b.regularization_;
}

LinearClassifier::Tally LinearClassifier::tally(std::span<const double> row) const {
  if (row.size() != feature_ids_.size()) {
    throw std::invalid_argument("predict: row has " + std::to_string(row.size()) + " values, classifier expects " +
                                std::to_string(feature_ids_.size()));
  }
  for (double v : row) {
    if (!std::isfinite(v)) throw std::invalid_argument("predict: non-finite feature value");
  }
  Tally t{std::vector<int>(class_order_.size(), 0), std::vector<double>(class_order_.size(), 0.0)};
  for (const auto& rule : rules_) {
    const double g = rule.decision(row);
    ++t.votes[g >= 0.0 ? rule.first : rule.second];
    t.margins[rule.first] += g;
    t.margins[rule.second] -= g;
  }
  return t;
}

const std::string& LinearClassifier::predict(std::span<const double> row) const {
  const Tally t = tally(row);
  std::size_t best = 0;
  for (std::size_t k = 1; k < class_order_.size(); ++k) {
    if (t.votes[k] > t.votes[best] || (t.votes[k] == t.votes[best] && t.margins[k] > t.margins[best])) {
      best = k;
    }
  }
  return class_order_[best];
}

const std::string& LinearClassifier::predict(std::span<const FeatureValue> row) const {
  std::vector<double> values(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j].is_special()) throw std::domain_error("predict: special feature value");
    values[j] = row[j].value();
  }
  return predict(values);
}

LinearClassifier fit_lda(const std::vector<std::vector<double>>& rows, std::span<const std::string> labels,
                         std::vector<std::string> feature_ids, const LdaOptions& options) {
  const std::size_t n = rows.size();
  const std::size_t d = feature_ids.size();
  if (labels.size() != n) throw std::invalid_argument("fit_lda: one label per row required");
  if (n == 0) throw std::invalid_argument("fit_lda: no training rows");
  if (d == 0) throw std::invalid_argument("fit_lda: no features");

  std::vector<std::string> classes = options.class_order;
  if (classes.empty()) {
    classes.assign(labels.begin(), labels.end());
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  }
  const std::size_t c = classes.size();
  if (c < 2) throw std::invalid_argument("fit_lda: need at least two classes");
  std::map<std::string, std::size_t> class_index;
  for (std::size_t k = 0; k < c; ++k) class_index[classes[k]] = k;

  const auto dim = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(c));
  std::vector<std::size_t> counts(c, 0);
  std::vector<std::size_t> row_class(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != d) throw std::invalid_argument("fit_lda: ragged feature rows");
    const auto it = class_index.find(labels[i]);
    if (it == class_index.end()) throw std::invalid_argument("fit_lda: label '" + labels[i] + "' not in class order");
    row_class[i] = it->second;
    ++counts[it->second];
    for (std::size_t j = 0; j < d; ++j) {
      if (!std::isfinite(rows[i][j])) throw std::invalid_argument("fit_lda: non-finite feature value");
      means(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(it->second)) += rows[i][j];
    }
  }
  for (std::size_t k = 0; k < c; ++k) {
    if (counts[k] == 0) throw std::invalid_argument("fit_lda: class '" + classes[k] + "' has no training rows");
    means.col(static_cast<Eigen::Index>(k)) /= static_cast<double>(counts[k]);
  }

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd dev(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      dev(static_cast<Eigen::Index>(j)) =
          rows[i][j] - means(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(row_class[i]));
    }
    cov.selfadjointView<Eigen::Lower>().rankUpdate(dev);
  }
  cov = cov.selfadjointView<Eigen::Lower>();
  cov /= static_cast<double>(std::max<std::size_t>(n - std::min(n, c), 1));

  // With no within-class spread at all, fall back to the identity
  // (nearest class mean).
  double ridge = 1e-8 * cov.trace() / static_cast<double>(d);
  if (!(ridge > 0.0)) ridge = 1.0;
  cov.diagonal().array() += ridge;
  const Eigen::LDLT<Eigen::MatrixXd> solver(cov);

  std::vector<PairwiseRule> rules;
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = a + 1; b < c; ++b) {
      const auto ia = static_cast<Eigen::Index>(a);
      const auto ib = static_cast<Eigen::Index>(b);
      const Eigen::VectorXd w = solver.solve(means.col(ia) - means.col(ib));
      double offset = -0.5 * w.dot(means.col(ia) + means.col(ib));
      if (options.priors == Priors::empirical) {
        offset += std::log(static_cast<double>(counts[a]) / static_cast<double>(counts[b]));
      }
      PairwiseRule rule{a, b, std::vector<double>(w.data(), w.data() + w.size()), offset};
      rules.push_back(std::move(rule));
    }
  }
  return LinearClassifier(std::move(feature_ids), std::move(classes), std::move(rules), ridge);
}

LinearClassifier fit_lda(const FeatureMatrix& m, std::span<const std::string> feature_ids,
                         const LdaOptions& options) {
  std::vector<std::size_t> cols;
  for (const auto& id : feature_ids) cols.push_back(m.column_index(id));
  return fit_lda(m.real_rows(cols), m.labels(), {feature_ids.begin(), feature_ids.end()}, options);
}

double misclassification_rate(const LinearClassifier& clf, const std::vector<std::vector<double>>& rows,
                              std::span<const std::string> labels) {
  if (rows.empty()) throw std::invalid_argument("misclassification_rate: no rows");
  if (rows.size() != labels.size()) throw std::invalid_argument("misclassification_rate: one label per row required");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (clf.predict(std::span<const double>(rows[i])) != labels[i]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(rows.size());
}

double misclassification_rate(const LinearClassifier& clf, const FeatureMatrix& m) {
  std::vector<std::size_t> cols;
  for (const auto& id : clf.feature_ids()) cols.push_back(m.column_index(id));
  return misclassification_rate(clf, m.real_rows(cols), m.labels());
}

std::string to_json(const LinearClassifier& clf) {
  using nlohmann::json;
  json doc;
  doc["feature_ids"] = clf.feature_ids();
  doc["class_order"] = clf.class_order();
  doc["regularization"] = detail::format_17(clf.regularization());
  json rules = json::array();
  for (const auto& r : clf.rules()) {
    json w = json::array();
    for (double v : r.weights) w.push_back(detail::format_17(v));
    rules.push_back({{"first", clf.class_order()[r.first]},
                     {"second", clf.class_order()[r.second]},
                     {"weights", w},
                     {"offset", detail::format_17(r.offset)}});
  }
  doc["pairwise_rules"] = rules;
  return doc.dump(2);
}

namespace {

double number_field(const nlohmann::json& j) {
  const auto v = detail::parse_double(j.get<std::string>());
  if (!v) throw std::runtime_error("classifier JSON: bad number '" + j.get<std::string>() + "'");
  return *v;
}

}  // namespace

LinearClassifier classifier_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    auto feature_ids = doc.at("feature_ids").get<std::vector<std::string>>();
    auto class_order = doc.at("class_order").get<std::vector<std::string>>();
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < class_order.size(); ++k) index[class_order[k]] = k;
    std::vector<PairwiseRule> rules;
    for (const auto& r : doc.at("pairwise_rules")) {
      PairwiseRule rule;
      rule.first = index.at(r.at("first").get<std::string>());
      rule.second = index.at(r.at("second").get<std::string>());
      for (const auto& w : r.at("weights")) rule.weights.push_back(number_field(w));
      rule.offset = number_field(r.at("offset"));
      rules.push_back(std::move(rule));
    }
    return LinearClassifier(std::move(feature_ids), std::move(class_order), std::move(rules),
                            number_field(doc.at("regularization")));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("classifier JSON: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw std::runtime_error(std::string("classifier JSON: unknown class in rule: ") + e.what());
  }
}

}  // namespace tsfeat
