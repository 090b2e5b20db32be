#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tsfeat/feature_matrix.hpp"

namespace tsfeat {

enum class Priors { uniform, empirical };

/// Linear rule between classes `first` and `second` (indices into the class
/// order): g(x) = w.x + offset, g >= 0 votes for `first`.
struct PairwiseRule {
  std::size_t first = 0;
  std::size_t second = 0;
  std::vector<double> weights;
  double offset = 0.0;

  double decision(std::span<const double> row) const;
};

/// One-vs-one linear discriminant over a fixed feature subset.
class LinearClassifier {
 public:
  /// Checks that there are C(C-1)/2 rules, one per unordered class pair,
  /// each with |feature_ids| weights.
  LinearClassifier(std::vector<std::string> feature_ids, std::vector<std::string> class_order,
                   std::vector<PairwiseRule> rules, double regularization);

  const std::vector<std::string>& feature_ids() const { return feature_ids_; }
  const std::vector<std::string>& class_order() const { return class_order_; }
  const std::vector<PairwiseRule>& rules() const { return rules_; }
  double regularization() const { return regularization_; }

  struct Tally {
    std::vector<int> votes;
    std::vector<double> margins;  // summed signed discriminant per class
  };
  Tally tally(std::span<const double> row) const;

  /// Most votes wins; ties go to the largest summed margin, then to the
  /// earliest class in class_order. Throws std::invalid_argument on a
  /// dimension mismatch or a non-finite value.
  const std::string& predict(std::span<const double> row) const;
  /// Throws std::domain_error when any value is special.
  const std::string& predict(std::span<const FeatureValue> row) const;

  friend bool operator==(const LinearClassifier&, const LinearClassifier&);

 private:
  std::vector<std::string> feature_ids_;
  std::vector<std::string> class_order_;
  std::vector<PairwiseRule> rules_;
  double regularization_ = 0.0;
};

bool operator==(const PairwiseRule& a, const PairwiseRule& b);

struct LdaOptions {
  Priors priors = Priors::uniform;
  /// Explicit class order; empty means the sorted labels of the training rows.
  std::vector<std::string> class_order;
};

/// Pooled-covariance LDA. Covariance is pooled over all classes once and
/// ridge-regularized by 1e-8 * trace / d on the diagonal. Throws
/// std::invalid_argument on ragged rows, a label count mismatch, fewer than
/// two classes, or a class with no rows.
LinearClassifier fit_lda(const std::vector<std::vector<double>>& rows, std::span<const std::string> labels,
                         std::vector<std::string> feature_ids, const LdaOptions& options = {});

/// Fits on the named columns of `m` using its row labels. Throws
/// std::domain_error when a used cell is special.
LinearClassifier fit_lda(const FeatureMatrix& m, std::span<const std::string> feature_ids,
                         const LdaOptions& options = {});

/// Fraction of rows predicted wrongly. Throws on empty input.
double misclassification_rate(const LinearClassifier& clf, const std::vector<std::vector<double>>& rows,
                              std::span<const std::string> labels);
/// Uses the classifier's feature columns of `m`; special cells throw.
double misclassification_rate(const LinearClassifier& clf, const FeatureMatrix& m);

/// JSON document; numbers are decimal strings with 17 significant digits.
std::string to_json(const LinearClassifier& clf);
/// Throws std::runtime_error on a malformed document.
LinearClassifier classifier_from_json(const std::string& text);

}  // namespace tsfeat
