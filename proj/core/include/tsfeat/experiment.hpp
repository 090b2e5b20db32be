#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsfeat/catalog.hpp"
#include "tsfeat/lda.hpp"
#include "tsfeat/selection.hpp"
#include "tsfeat/ucr.hpp"

namespace tsfeat {

enum class Method { feature_linear, euclid_1nn, dtw_1nn, dtw_1nn_bestwindow };

std::string_view to_string(Method method);
/// Throws std::invalid_argument for an unknown name.
Method parse_method(std::string_view name);

/// Rows used when dropping features that produce special values.
enum class FilterScope { dataset, train };

struct ExperimentParams {
  double threshold_pp = 3.0;
  std::size_t max_features = 30;
  FilterScope filter_scope = FilterScope::dataset;
  EvaluationMode evaluation;
  Priors priors = Priors::uniform;
  /// Restrict the default catalog to these ids; empty means the whole catalog.
  std::vector<std::string> catalog_ids;
  PartitionSpec partition;
  /// Warping-window grid (percent) for dtw-1nn-bestwindow; empty means 0..100.
  std::vector<double> window_grid;
  unsigned threads = 0;
};

struct ExperimentReport {
  std::string dataset;
  Method method = Method::feature_linear;
  std::string partition = "fixed";
  std::uint64_t partition_seed = 0;
  std::uint64_t seed = 0;
  std::string catalog_hash;

  std::size_t series_length = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t n_classes = 0;

  // feature-linear only
  std::size_t n_valid_features = 0;
  std::vector<std::string> selected;
  std::optional<SelectionTrace> trace;
  std::vector<std::string> unscorable_test_ids;

  // dtw-1nn-bestwindow only
  std::optional<double> r_star;

  /// Training error: resubstitution for feature-linear, leave-one-out for 1-NN.
  double train_rate = 0.0;
  double test_rate = 0.0;
  std::size_t n_feat = 0;

  /// Wall-clock seconds per phase. Excluded from determinism guarantees.
  std::map<std::string, double> timings;

  /// Empty on success; set by run_suite when a run fails.
  std::string error;
};

/// Runs one method on a dataset already in memory.
ExperimentReport run_experiment(const Dataset& dataset, Method method, const ExperimentParams& params,
                                std::uint64_t seed);

/// Loads `dataset` through the manifest, then runs. Errors carry the
/// dataset and phase.
ExperimentReport run_experiment(const Manifest& manifest, const std::string& dataset, Method method,
                                const ExperimentParams& params, std::uint64_t seed);

/// Cross product of datasets x methods x partitions in that order. A failing
/// run yields a report with `error` set instead of aborting.
std::vector<ExperimentReport> run_suite(const Manifest& manifest, const std::vector<std::string>& datasets,
                                        const std::vector<Method>& methods,
                                        const std::vector<PartitionSpec>& partitions, const ExperimentParams& params,
                                        std::uint64_t seed);

/// `count` resampled partitions with seeds derived from `seed`.
std::vector<PartitionSpec> resampled_partitions(std::size_t count, std::uint64_t seed);

enum class ReportFormat { json, csv, text_table };

/// Throws std::invalid_argument for an unknown name.
ReportFormat parse_report_format(std::string_view name);

std::string emit_report(const std::vector<ExperimentReport>& reports, ReportFormat format);
std::string emit_report(const ExperimentReport& report, ReportFormat format);

/// Inverse of the JSON emitter (array or single object).
std::vector<ExperimentReport> reports_from_json(const std::string& text);

struct BenchRow {
  std::string feature;
  std::size_t length = 0;
  std::size_t repeats = 0;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
};

struct BenchTable {
  std::vector<BenchRow> rows;
  /// Least-squares slope of log(mean time) against log(length), per feature.
  std::map<std::string, double> slopes;
};

/// Times each feature on seeded Gaussian white noise of each length.
/// Throws std::out_of_range for an id missing from the catalog.
BenchTable bench_scaling(const Catalog& catalog, const std::vector<std::string>& feature_ids,
                         const std::vector<std::size_t>& lengths = {1000, 10000, 100000}, std::size_t repeats = 100,
                         std::uint64_t seed = 0);

std::string emit_bench(const BenchTable& table, ReportFormat format);

}  // namespace tsfeat
