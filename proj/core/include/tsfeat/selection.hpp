#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsfeat/feature_matrix.hpp"
#include "tsfeat/lda.hpp"

namespace tsfeat {

/// How a candidate subset is scored on the training rows.
struct EvaluationMode {
  enum class Kind { resubstitution, kfold };
  Kind kind = Kind::resubstitution;
  std::size_t folds = 10;

  static EvaluationMode resubstitution() { return {}; }
  static EvaluationMode kfold(std::size_t k) { return {Kind::kfold, k}; }
};

struct SubsetScore {
  double rate = 0.0;
  /// True when k-fold was requested but some class had fewer than k rows.
  bool fell_back_to_resubstitution = false;
};

/// Training misclassification of an LDA over `ids`. k-fold uses stratified
/// round-robin folds and averages held-out error. Throws std::out_of_range
/// for unknown ids and std::invalid_argument for an empty id list.
SubsetScore evaluate_subset(const FeatureMatrix& m, std::span<const std::string> ids,
                            EvaluationMode mode = {}, const LdaOptions& lda = {});

enum class TerminationReason { zero_train_error, improvement_below_threshold, max_features, exhausted };

std::string_view to_string(TerminationReason reason);

struct SelectionStep {
  std::string chosen;
  double rate = 0.0;
  std::size_t n_tied = 1;
  /// Rate of every candidate at this step; filled when recording is on.
  std::map<std::string, double> candidate_rates;
};

struct SelectionTrace {
  std::vector<SelectionStep> iterations;
  TerminationReason termination = TerminationReason::exhausted;
  std::uint64_t seed = 0;
  /// Best candidate that failed the improvement threshold, if any.
  std::optional<SelectionStep> rejected;

  std::vector<std::string> selected() const;
};

struct SelectionOptions {
  double threshold_pp = 3.0;
  std::size_t max_features = 30;
  std::uint64_t seed = 0;
  EvaluationMode mode;
  LdaOptions lda;
  bool record_candidate_rates = false;
  unsigned threads = 1;
};

/// Greedy forward selection over all columns of `m` (which must be the valid
/// training columns). Candidates are ordered by id; exact rate ties are
/// broken by a seeded draw. Stops on zero training error, an improvement
/// below `threshold_pp` percentage points (that candidate is not added),
/// `max_features`, or when candidates run out.
SelectionTrace greedy_select(const FeatureMatrix& m, const SelectionOptions& options = {});

std::string to_json(const SelectionTrace& trace);
SelectionTrace selection_trace_from_json(const std::string& text);

}  // namespace tsfeat
