// tsfeat: feature-based time-series classification experiments.
//
// Exit codes: 0 success, 1 fatal error, 2 when a suite finished with some
// failed runs.

#include <CLI11.hpp>
#include <tsfeat/tsfeat.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace tsfeat;

namespace {

struct Common {
  std::string manifest;
  std::string dataset;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  unsigned threads = 0;
};

struct Selection {
  double threshold_pp = 3.0;
  std::size_t max_features = 30;
  std::string filter_scope = "dataset";
  std::string cv = "resub";
  std::string priors = "uniform";
  std::vector<std::string> catalog;
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

EvaluationMode parse_cv(const std::string& text) {
  if (text == "resub") return EvaluationMode::resubstitution();
  if (text.starts_with("kfold:")) {
    const std::string k = text.substr(6);
    std::size_t used = 0;
    unsigned long folds = 0;
    try {
      folds = std::stoul(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == k.size() && folds >= 2) return EvaluationMode::kfold(folds);
  }
  throw std::invalid_argument("--cv must be 'resub' or 'kfold:K' with K >= 2, got '" + text + "'");
}

ExperimentParams params_from(const Common& c, const Selection& s) {
  ExperimentParams p;
  p.threshold_pp = s.threshold_pp;
  p.max_features = s.max_features;
  p.filter_scope = s.filter_scope == "train" ? FilterScope::train : FilterScope::dataset;
  p.evaluation = parse_cv(s.cv);
  p.priors = s.priors == "empirical" ? Priors::empirical : Priors::uniform;
  p.catalog_ids = s.catalog;
  p.threads = c.threads;
  return p;
}

void add_common(CLI::App* cmd, Common& c, bool needs_dataset) {
  cmd->add_option("--manifest", c.manifest, "JSON manifest: name -> {train_path, test_path}")->required();
  auto* d = cmd->add_option("--dataset", c.dataset, "Dataset name in the manifest");
  if (needs_dataset) d->required();
  cmd->add_option("--seed", c.seed, "Seed for tie-breaking and resampling")->default_val(0);
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->default_val(0);
}

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text-table", "text"}))
      ->default_val("json");
}

void add_selection(CLI::App* cmd, Selection& s) {
  cmd->add_option("--threshold-pp", s.threshold_pp, "Minimum improvement in percentage points")->default_val(3.0);
  cmd->add_option("--max-features", s.max_features, "Upper bound on selected features")->default_val(30);
  cmd->add_option("--filter-scope", s.filter_scope, "Rows used to drop special-valued features")
      ->check(CLI::IsMember({"dataset", "train"}))
      ->default_val("dataset");
  cmd->add_option("--cv", s.cv, "Subset scoring: resub or kfold:K")->default_val("resub");
  cmd->add_option("--priors", s.priors, "Class priors")
      ->check(CLI::IsMember({"uniform", "empirical"}))
      ->default_val("uniform");
  cmd->add_option("--catalog", s.catalog, "Restrict to these feature ids (comma separated)")->delimiter(',');
}

std::vector<TimeSeries> pooled(const Dataset& d) {
  std::vector<TimeSeries> all(d.train());
  all.insert(all.end(), d.test().begin(), d.test().end());
  return all;
}

Catalog catalog_for(const std::vector<std::string>& ids) {
  return ids.empty() ? default_catalog() : default_catalog().restrict_to(ids);
}

int cmd_features(const Common& c, const std::vector<std::string>& ids) {
  const auto ds = Manifest::load(c.manifest).load_dataset(c.dataset);
  const auto matrix = compute_matrix(catalog_for(ids), pooled(ds), c.threads);
  std::ostringstream out;
  write_matrix_csv(out, matrix);
  write_output(c.out, out.str());
  return 0;
}

// Train rows of a matrix computed over train + test, restricted to valid columns.
FeatureMatrix training_matrix(const Dataset& ds, const ExperimentParams& p) {
  const auto all = pooled(ds);
  const auto matrix = compute_matrix(catalog_for(p.catalog_ids), all, p.threads);
  std::vector<std::size_t> train(ds.train().size());
  for (std::size_t i = 0; i < train.size(); ++i) train[i] = i;
  const auto valid = p.filter_scope == FilterScope::train ? filter_special_values(matrix, std::span(train))
                                                          : filter_special_values(matrix);
  if (valid.empty()) throw std::runtime_error("no feature is free of special values");
  return matrix.select_rows(train).select_columns(valid);
}

int cmd_select(const Common& c, const Selection& s, const std::string& matrix_path) {
  const auto p = params_from(c, s);
  FeatureMatrix train;
  if (!matrix_path.empty()) {
    std::ifstream in(matrix_path);
    if (!in) throw std::runtime_error("cannot open '" + matrix_path + "'");
    const auto m = read_matrix_csv(in);
    train = m.select_columns(filter_special_values(m));
  } else {
    if (c.manifest.empty() || c.dataset.empty()) throw std::invalid_argument("select needs --matrix or --manifest/--dataset");
    train = training_matrix(resample_partition(Manifest::load(c.manifest).load_dataset(c.dataset), p.partition), p);
  }
  SelectionOptions opt;
  opt.threshold_pp = p.threshold_pp;
  opt.max_features = p.max_features;
  opt.seed = c.seed;
  opt.mode = p.evaluation;
  opt.lda.priors = p.priors;
  opt.record_candidate_rates = true;
  opt.threads = p.threads;
  write_output(c.out, to_json(greedy_select(train, opt)) + "\n");
  return 0;
}

int cmd_classify(const Common& c, const Selection& s, const std::vector<std::string>& features,
                 const std::string& model_in, const std::string& model_out) {
  const auto ds = Manifest::load(c.manifest).load_dataset(c.dataset);
  std::optional<LinearClassifier> clf;
  if (!model_in.empty()) {
    std::ifstream in(model_in);
    if (!in) throw std::runtime_error("cannot open '" + model_in + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    clf = classifier_from_json(buf.str());
  }
  const auto ids = clf ? clf->feature_ids() : features;
  if (ids.empty()) throw std::invalid_argument("classify needs --features or --model");

  const auto matrix = compute_matrix(default_catalog().restrict_to(ids), pooled(ds), c.threads);
  const std::size_t n_train = ds.train().size();
  std::vector<std::size_t> train_rows(n_train);
  for (std::size_t i = 0; i < n_train; ++i) train_rows[i] = i;
  const auto train = matrix.select_rows(train_rows);
  if (!clf) {
    LdaOptions lda;
    lda.priors = s.priors == "empirical" ? Priors::empirical : Priors::uniform;
    lda.class_order = sorted_labels(ds.train());
    clf = fit_lda(train, ids, lda);
  }
  if (!model_out.empty()) write_output(model_out, to_json(*clf) + "\n");

  std::size_t wrong = 0;
  std::ostringstream out;
  out << "series_id,label,predicted\n";
  for (std::size_t r = n_train; r < matrix.rows(); ++r) {
    std::vector<FeatureValue> row;
    for (std::size_t j = 0; j < ids.size(); ++j) row.push_back(matrix.at(r, matrix.column_index(ids[j])));
    std::string predicted = "NA";
    try {
      predicted = clf->predict(std::span<const FeatureValue>(row));
    } catch (const std::domain_error&) {
    }
    wrong += predicted != matrix.labels()[r];
    out << matrix.series_ids()[r] << ',' << matrix.labels()[r] << ',' << predicted << '\n';
  }
  write_output(c.out, out.str());
  const std::size_t n_test = matrix.rows() - n_train;
  std::fprintf(stderr, "test misclassification %.4f (%zu/%zu)\n",
               n_test ? static_cast<double>(wrong) / static_cast<double>(n_test) : 0.0, wrong, n_test);
  return 0;
}

int cmd_experiment(const Common& c, const Selection& s, const std::string& method, const std::vector<double>& grid) {
  auto p = params_from(c, s);
  p.window_grid = grid;
  const auto report = run_experiment(Manifest::load(c.manifest), c.dataset, parse_method(method), p, c.seed);
  write_output(c.out, emit_report(report, parse_report_format(c.format)));
  return 0;
}

int cmd_suite(const Common& c, const Selection& s, std::vector<std::string> datasets,
              std::vector<std::string> methods, std::size_t resamples, bool include_fixed,
              const std::vector<double>& grid) {
  auto p = params_from(c, s);
  p.window_grid = grid;
  const auto manifest = Manifest::load(c.manifest);
  if (datasets.empty()) datasets = manifest.names();
  if (methods.empty()) methods = {"euclid-1nn", "dtw-1nn", "dtw-1nn-bestwindow", "feature-linear"};
  std::vector<Method> parsed;
  for (const auto& m : methods) parsed.push_back(parse_method(m));
  std::vector<PartitionSpec> partitions;
  if (include_fixed) partitions.push_back({});
  for (const auto& r : resampled_partitions(resamples, c.seed)) partitions.push_back(r);
  if (partitions.empty()) throw std::invalid_argument("no partitions requested");

  const auto reports = run_suite(manifest, datasets, parsed, partitions, p, c.seed);
  write_output(c.out, emit_report(reports, parse_report_format(c.format)));
  int failures = 0;
  for (const auto& r : reports) {
    if (!r.error.empty()) {
      ++failures;
      std::fprintf(stderr, "error: %s\n", r.error.c_str());
    }
  }
  return failures ? 2 : 0;
}

int cmd_bench(const Common& c, const std::vector<std::string>& features, const std::vector<std::size_t>& lengths,
              std::size_t repeats) {
  const auto table = bench_scaling(default_catalog(), features, lengths, repeats, c.seed);
  write_output(c.out, emit_bench(table, parse_report_format(c.format)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feature-based time-series classification"};
  app.require_subcommand(1);

  Common common;
  Selection sel;

  auto* features = app.add_subcommand("features", "Compute the feature matrix (train + test) as a CSV cache");
  std::vector<std::string> feature_ids;
  add_common(features, common, true);
  features->add_option("--catalog", feature_ids, "Restrict to these feature ids")->delimiter(',');

  auto* select = app.add_subcommand("select", "Greedy forward selection on the training rows; prints the trace");
  std::string matrix_path;
  select->add_option("--manifest", common.manifest, "JSON manifest");
  select->add_option("--dataset", common.dataset, "Dataset name in the manifest");
  select->add_option("--matrix", matrix_path, "Feature-matrix CSV to select from (all rows treated as training)");
  select->add_option("--seed", common.seed)->default_val(0);
  select->add_option("--out", common.out);
  select->add_option("--threads", common.threads)->default_val(0);
  add_selection(select, sel);

  auto* classify = app.add_subcommand("classify", "Fit LDA on chosen features and label the test set");
  std::vector<std::string> classify_features;
  std::string model_in, model_out;
  add_common(classify, common, true);
  classify->add_option("--features", classify_features, "Feature ids to use")->delimiter(',');
  classify->add_option("--model", model_in, "Use a saved classifier instead of fitting");
  classify->add_option("--save-model", model_out, "Write the fitted classifier JSON here");
  classify->add_option("--priors", sel.priors)->check(CLI::IsMember({"uniform", "empirical"}))->default_val("uniform");

  auto* baseline = app.add_subcommand("baseline", "1-NN baseline on one dataset");
  std::string baseline_method = "euclid-1nn";
  std::vector<double> grid;
  add_common(baseline, common, true);
  add_format(baseline, common);
  baseline->add_option("--method", baseline_method)
      ->check(CLI::IsMember({"euclid-1nn", "dtw-1nn", "dtw-1nn-bestwindow"}))
      ->default_val("euclid-1nn");
  baseline->add_option("--window-grid", grid, "Warping windows (percent) to search")->delimiter(',');

  auto* experiment = app.add_subcommand("experiment", "One dataset, one method");
  std::string method = "feature-linear";
  add_common(experiment, common, true);
  add_format(experiment, common);
  add_selection(experiment, sel);
  experiment->add_option("--method", method)
      ->check(CLI::IsMember({"feature-linear", "euclid-1nn", "dtw-1nn", "dtw-1nn-bestwindow"}))
      ->default_val("feature-linear");
  experiment->add_option("--window-grid", grid, "Warping windows (percent) to search")->delimiter(',');

  auto* suite = app.add_subcommand("suite", "Datasets x methods x partitions");
  std::vector<std::string> datasets, methods;
  std::size_t resamples = 0;
  bool no_fixed = false;
  add_common(suite, common, false);
  add_format(suite, common);
  add_selection(suite, sel);
  suite->add_option("--datasets", datasets, "Dataset names (default: all in the manifest)")->delimiter(',');
  suite->add_option("--methods", methods, "Methods (default: all four)")->delimiter(',');
  suite->add_option("--resamples", resamples, "Additional resampled partitions")->default_val(0);
  suite->add_flag("--no-fixed", no_fixed, "Skip the shipped train/test split");
  suite->add_option("--window-grid", grid, "Warping windows (percent) to search")->delimiter(',');

  auto* bench = app.add_subcommand("bench", "Runtime scaling on Gaussian white noise");
  std::vector<std::string> bench_features{"trev_tau3", "motif_dudu"};
  std::vector<std::size_t> lengths{1000, 10000, 100000};
  std::size_t repeats = 100;
  bench->add_option("--features", bench_features)->delimiter(',');
  bench->add_option("--lengths", lengths)->delimiter(',');
  bench->add_option("--repeats", repeats)->default_val(100)->check(CLI::PositiveNumber);
  bench->add_option("--seed", common.seed)->default_val(0);
  bench->add_option("--out", common.out);
  add_format(bench, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*features) return cmd_features(common, feature_ids);
    if (*select) return cmd_select(common, sel, matrix_path);
    if (*classify) return cmd_classify(common, sel, classify_features, model_in, model_out);
    if (*baseline) return cmd_experiment(common, sel, baseline_method, grid);
    if (*experiment) return cmd_experiment(common, sel, method, grid);
    if (*suite) return cmd_suite(common, sel, datasets, methods, resamples, !no_fixed, grid);
    if (*bench) return cmd_bench(common, bench_features, lengths, repeats);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "tsfeat: %s\n", e.what());
    return 1;
  }
  return 1;
}
