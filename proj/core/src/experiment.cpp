#include "tsfeat/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

#include "tsfeat/baselines.hpp"
#include "tsfeat/detail/parallel.hpp"
#include "tsfeat/feature_matrix.hpp"

namespace tsfeat {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::feature_linear: return "feature-linear";
    case Method::euclid_1nn: return "euclid-1nn";
    case Method::dtw_1nn: return "dtw-1nn";
    case Method::dtw_1nn_bestwindow: return "dtw-1nn-bestwindow";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::feature_linear, Method::euclid_1nn, Method::dtw_1nn, Method::dtw_1nn_bestwindow}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

class PhaseTimer {
 public:
  PhaseTimer(ExperimentReport& report, std::string phase) : report_(report), phase_(std::move(phase)) {}
  ~PhaseTimer() { report_.timings[phase_] += std::chrono::duration<double>(Clock::now() - start_).count(); }
  PhaseTimer(const PhaseTimer&) = delete;
  PhaseTimer& operator=(const PhaseTimer&) = delete;

 private:
  ExperimentReport& report_;
  std::string phase_;
  Clock::time_point start_ = Clock::now();
};

// Runs `fn`, prefixing any exception with the dataset and phase.
template <typename Fn>
auto in_phase(const std::string& dataset, std::string_view phase, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw std::runtime_error(dataset + " [" + std::string(phase) + "]: " + e.what());
  }
}

double loocv_error(std::span<const TimeSeries> train, const BaselineConfig& cfg, unsigned threads) {
  const std::size_t n = train.size();
  if (n < 2) throw std::invalid_argument("leave-one-out needs at least two training series");
  std::vector<unsigned char> wrong(n, 0);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    std::size_t best = n;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = cfg.distance(train[j].values(), train[i].values());
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    wrong[i] = best == n || train[best].label() != train[i].label();
  });
  return static_cast<double>(std::count(wrong.begin(), wrong.end(), 1)) / static_cast<double>(n);
}

void run_feature_linear(const Dataset& ds, const ExperimentParams& params, std::uint64_t seed,
                        ExperimentReport& report) {
  const Catalog catalog =
      params.catalog_ids.empty() ? default_catalog() : default_catalog().restrict_to(params.catalog_ids);
  report.catalog_hash = catalog.version_hash();

  std::vector<TimeSeries> all(ds.train());
  all.insert(all.end(), ds.test().begin(), ds.test().end());
  const std::size_t n_train = ds.train().size();

  const FeatureMatrix matrix = in_phase(ds.name(), "features", [&] {
    PhaseTimer t(report, "features");
    return compute_matrix(catalog, all, params.threads);
  });

  std::vector<std::size_t> train_rows(n_train);
  for (std::size_t i = 0; i < n_train; ++i) train_rows[i] = i;
  std::vector<std::size_t> test_rows(all.size() - n_train);
  for (std::size_t i = 0; i < test_rows.size(); ++i) test_rows[i] = n_train + i;

  const auto valid = in_phase(ds.name(), "filter", [&] {
    if (params.filter_scope == FilterScope::train) return filter_special_values(matrix, std::span(train_rows));
    return filter_special_values(matrix);
  });
  report.n_valid_features = valid.size();
  if (valid.empty()) throw std::runtime_error(ds.name() + " [filter]: no feature is free of special values");

  const FeatureMatrix train = matrix.select_rows(train_rows).select_columns(valid);
  LdaOptions lda;
  lda.priors = params.priors;
  lda.class_order = sorted_labels(ds.train());

  SelectionOptions sel;
  sel.threshold_pp = params.threshold_pp;
  sel.max_features = params.max_features;
  sel.seed = seed;
  sel.mode = params.evaluation;
  sel.lda = lda;
  sel.threads = params.threads;
  const SelectionTrace trace = in_phase(ds.name(), "selection", [&] {
    PhaseTimer t(report, "selection");
    return greedy_select(train, sel);
  });
  report.selected = trace.selected();
  report.n_feat = report.selected.size();
  report.trace = trace;

  const LinearClassifier clf = in_phase(ds.name(), "fit", [&] {
    PhaseTimer t(report, "fit");
    return fit_lda(train, report.selected, lda);
  });
  report.train_rate = misclassification_rate(clf, train);

  in_phase(ds.name(), "test", [&] {
    PhaseTimer t(report, "test");
    std::vector<std::size_t> cols;
    for (const auto& id : report.selected) cols.push_back(matrix.column_index(id));
    std::size_t wrong = 0;
    std::vector<double> row(cols.size());
    for (std::size_t r : test_rows) {
      bool scorable = true;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const auto& v = matrix.at(r, cols[j]);
        if (v.is_special()) {
          scorable = false;
          break;
        }
        row[j] = v.value();
      }
      if (!scorable) {
        report.unscorable_test_ids.push_back(matrix.series_ids()[r]);
        ++wrong;
      } else if (clf.predict(std::span<const double>(row)) != matrix.labels()[r]) {
        ++wrong;
      }
    }
    report.test_rate = test_rows.empty() ? 0.0 : static_cast<double>(wrong) / static_cast<double>(test_rows.size());
    return 0;
  });
}

void run_baseline(const Dataset& ds, Method method, const ExperimentParams& params, ExperimentReport& report) {
  BaselineConfig cfg;
  if (method == Method::euclid_1nn) cfg.kind = BaselineKind::euclidean;
  if (method == Method::dtw_1nn) cfg.kind = BaselineKind::dtw_full;
  if (method == Method::dtw_1nn_bestwindow) {
    const auto search = in_phase(ds.name(), "window_search", [&] {
      PhaseTimer t(report, "window_search");
      return learn_best_window(ds.train(), params.window_grid, params.threads);
    });
    cfg.kind = BaselineKind::dtw_window;
    cfg.r_percent = search.best_r_percent;
    report.r_star = search.best_r_percent;
    for (std::size_t k = 0; k < search.grid.size(); ++k) {
      if (search.grid[k] == search.best_r_percent) report.train_rate = 1.0 - search.loocv_accuracy[k];
    }
  } else {
    report.train_rate = in_phase(ds.name(), "train_loocv", [&] {
      PhaseTimer t(report, "train_loocv");
      return loocv_error(ds.train(), cfg, params.threads);
    });
  }
  report.test_rate = in_phase(ds.name(), "test", [&] {
    PhaseTimer t(report, "test");
    return knn1_error_rate(ds.train(), ds.test(), cfg, params.threads);
  });
}

}  // namespace

ExperimentReport run_experiment(const Dataset& input, Method method, const ExperimentParams& params,
                                std::uint64_t seed) {
  ExperimentReport report;
  report.dataset = input.name();
  report.method = method;
  report.seed = seed;
  report.partition = params.partition.mode == PartitionSpec::Mode::fixed ? "fixed" : "resampled";
  report.partition_seed = params.partition.seed;

  const Dataset ds = in_phase(input.name(), "partition", [&] { return resample_partition(input, params.partition); });
  report.series_length = ds.series_length();
  report.n_train = ds.train().size();
  report.n_test = ds.test().size();
  report.n_classes = ds.classes().size();
  if (ds.train().empty()) throw std::runtime_error(ds.name() + " [partition]: empty training set");

  if (method == Method::feature_linear) {
    run_feature_linear(ds, params, seed, report);
  } else {
    run_baseline(ds, method, params, report);
  }
  return report;
}

ExperimentReport run_experiment(const Manifest& manifest, const std::string& dataset, Method method,
                                const ExperimentParams& params, std::uint64_t seed) {
  const auto start = Clock::now();
  const Dataset ds = in_phase(dataset, "load", [&] { return manifest.load_dataset(dataset); });
  const double load_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  ExperimentReport report = run_experiment(ds, method, params, seed);
  report.timings["load"] = load_seconds;
  return report;
}

std::vector<PartitionSpec> resampled_partitions(std::size_t count, std::uint64_t seed) {
  std::vector<PartitionSpec> out;
  for (std::size_t k = 0; k < count; ++k) {
    // splitmix64 step
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    out.push_back({PartitionSpec::Mode::resampled, z ^ (z >> 31)});
  }
  return out;
}

std::vector<ExperimentReport> run_suite(const Manifest& manifest, const std::vector<std::string>& datasets,
                                        const std::vector<Method>& methods,
                                        const std::vector<PartitionSpec>& partitions, const ExperimentParams& params,
                                        std::uint64_t seed) {
  std::vector<ExperimentReport> reports;
  for (const auto& name : datasets) {
    std::optional<Dataset> ds;
    std::string load_error;
    try {
      ds = manifest.load_dataset(name);
    } catch (const std::exception& e) {
      load_error = name + " [load]: " + e.what();
    }
    for (Method method : methods) {
      for (const auto& partition : partitions) {
        ExperimentParams p = params;
        p.partition = partition;
        ExperimentReport report;
        if (ds) {
          try {
            report = run_experiment(*ds, method, p, seed);
          } catch (const std::exception& e) {
            report.error = e.what();
          }
        } else {
          report.error = load_error;
        }
        report.dataset = name;
        report.method = method;
        report.seed = seed;
        report.partition = partition.mode == PartitionSpec::Mode::fixed ? "fixed" : "resampled";
        report.partition_seed = partition.seed;
        reports.push_back(std::move(report));
      }
    }
  }
  return reports;
}

}  // namespace tsfeat
