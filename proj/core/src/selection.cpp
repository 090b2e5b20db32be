#include "tsfeat/selection.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <random>
#include <stdexcept>

#include "tsfeat/detail/parallel.hpp"

namespace tsfeat {

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::zero_train_error: return "zero-train-error";
    case TerminationReason::improvement_below_threshold: return "improvement-below-threshold";
    case TerminationReason::max_features: return "max-features";
    case TerminationReason::exhausted: return "exhausted";
  }
  return "unknown";
}

std::vector<std::string> SelectionTrace::selected() const {
  std::vector<std::string> out;
  for (const auto& it : iterations) out.push_back(it.chosen);
  return out;
}

namespace {

// Column-major real view of a matrix, built once per selection run.
struct DenseColumns {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> values;  // values[col][row]
  std::vector<std::string> labels;
  std::vector<std::string> classes;

  explicit DenseColumns(const FeatureMatrix& m) : ids(m.feature_ids()), labels(m.labels()) {
    values.assign(m.cols(), std::vector<double>(m.rows()));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto& v = m.at(i, j);
        if (v.is_special()) {
          throw std::invalid_argument("selection: column '" + ids[j] + "' has special values; filter it first");
        }
        values[j][i] = v.value();
      }
    }
    classes = labels;
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  }

  std::vector<std::vector<double>> rows(std::span<const std::size_t> cols, std::span<const std::size_t> which) const {
    std::vector<std::vector<double>> out(which.size(), std::vector<double>(cols.size()));
    for (std::size_t r = 0; r < which.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) out[r][c] = values[cols[c]][which[r]];
    }
    return out;
  }
};

std::vector<std::string> pick(std::span<const std::string> all, std::span<const std::size_t> idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

SubsetScore score(const DenseColumns& data, std::span<const std::size_t> cols, EvaluationMode mode,
                  const LdaOptions& lda_in) {
  const std::size_t n = data.labels.size();
  LdaOptions lda = lda_in;
  if (lda.class_order.empty()) lda.class_order = data.classes;
  const auto feature_ids = pick(data.ids, cols);

  auto resubstitution = [&] {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const auto rows = data.rows(cols, all);
    const auto clf = fit_lda(rows, data.labels, feature_ids, lda);
    return misclassification_rate(clf, rows, data.labels);
  };

  if (mode.kind == EvaluationMode::Kind::resubstitution) return {resubstitution(), false};

  const std::size_t k = mode.folds;
  if (k < 2) throw std::invalid_argument("evaluate_subset: k-fold needs k >= 2");
  std::vector<std::size_t> fold(n);
  for (const auto& cls : lda.class_order) {
    std::size_t rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (data.labels[i] == cls) fold[i] = rank++ % k;
    }
    if (rank < k) return {resubstitution(), true};
  }
  double total = 0.0;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train;
    std::vector<std::size_t> held;
    for (std::size_t i = 0; i < n; ++i) (fold[i] == f ? held : train).push_back(i);
    std::vector<std::string> train_labels;
    std::vector<std::string> held_labels;
    for (std::size_t i : train) train_labels.push_back(data.labels[i]);
    for (std::size_t i : held) held_labels.push_back(data.labels[i]);
    const auto clf = fit_lda(data.rows(cols, train), train_labels, feature_ids, lda);
    total += misclassification_rate(clf, data.rows(cols, held), held_labels);
  }
  return {total / static_cast<double>(k), false};
}

}  // namespace

SubsetScore evaluate_subset(const FeatureMatrix& m, std::span<const std::string> ids, EvaluationMode mode,
                            const LdaOptions& lda) {
  if (ids.empty()) throw std::invalid_argument("evaluate_subset: empty feature subset");
  const DenseColumns data(m.select_columns(ids));
  std::vector<std::size_t> local(ids.size());
  for (std::size_t i = 0; i < local.size(); ++i) local[i] = i;
  return score(data, local, mode, lda);
}

SelectionTrace greedy_select(const FeatureMatrix& m, const SelectionOptions& options) {
  if (m.cols() == 0) throw std::invalid_argument("greedy_select: no valid feature columns");
  const DenseColumns data(m);
  if (data.classes.size() < 2) throw std::invalid_argument("greedy_select: need at least two classes");

  // Candidates in id order, so tie sets are independent of column order.
  std::vector<std::size_t> remaining(m.cols());
  for (std::size_t j = 0; j < remaining.size(); ++j) remaining[j] = j;
  std::sort(remaining.begin(), remaining.end(), [&](std::size_t a, std::size_t b) { return data.ids[a] < data.ids[b]; });

  SelectionTrace trace;
  trace.seed = options.seed;
  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> chosen;

  while (true) {
    if (chosen.size() >= options.max_features) {
      trace.termination = TerminationReason::max_features;
      break;
    }
    if (remaining.empty()) {
      trace.termination = TerminationReason::exhausted;
      break;
    }

    std::vector<double> rates(remaining.size());
    detail::parallel_for(remaining.size(), options.threads, [&](std::size_t c) {
      std::vector<std::size_t> cols = chosen;
      cols.push_back(remaining[c]);
      rates[c] = score(data, cols, options.mode, options.lda).rate;
    });

    const double best = *std::min_element(rates.begin(), rates.end());
    std::vector<std::size_t> tied;
    for (std::size_t c = 0; c < rates.size(); ++c) {
      if (rates[c] == best) tied.push_back(c);
    }
    const std::size_t win = tied.size() == 1 ? tied[0] : tied[rng() % tied.size()];

    SelectionStep step;
    step.chosen = data.ids[remaining[win]];
    step.rate = best;
    step.n_tied = tied.size();
    if (options.record_candidate_rates) {
      for (std::size_t c = 0; c < rates.size(); ++c) step.candidate_rates[data.ids[remaining[c]]] = rates[c];
    }

    if (!trace.iterations.empty()) {
      const double improvement_pp = (trace.iterations.back().rate - best) * 100.0;
      // Rates are ratios of small integers; allow for rounding in the subtraction.
      if (improvement_pp < options.threshold_pp - 1e-9) {
        trace.rejected = std::move(step);
        trace.termination = TerminationReason::improvement_below_threshold;
        break;
      }
    }

    chosen.push_back(remaining[win]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(win));
    trace.iterations.push_back(std::move(step));
    if (best == 0.0) {
      trace.termination = TerminationReason::zero_train_error;
      break;
    }
  }
  return trace;
}

namespace {

nlohmann::json step_json(const SelectionStep& s) {
  nlohmann::json j{{"chosen", s.chosen}, {"rate", s.rate}, {"n_tied", s.n_tied}};
  if (!s.candidate_rates.empty()) j["candidate_rates"] = s.candidate_rates;
  return j;
}

SelectionStep step_from_json(const nlohmann::json& j) {
  SelectionStep s;
  s.chosen = j.at("chosen").get<std::string>();
  s.rate = j.at("rate").get<double>();
  s.n_tied = j.at("n_tied").get<std::size_t>();
  if (j.contains("candidate_rates")) s.candidate_rates = j.at("candidate_rates").get<std::map<std::string, double>>();
  return s;
}

}  // namespace

std::string to_json(const SelectionTrace& trace) {
  nlohmann::json doc;
  doc["selected"] = trace.selected();
  nlohmann::json its = nlohmann::json::array();
  for (const auto& s : trace.iterations) its.push_back(step_json(s));
  doc["iterations"] = its;
  doc["termination_reason"] = std::string(to_string(trace.termination));
  doc["seed"] = trace.seed;
  if (trace.rejected) doc["rejected"] = step_json(*trace.rejected);
  return doc.dump(2);
}

SelectionTrace selection_trace_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    SelectionTrace t;
    for (const auto& s : doc.at("iterations")) t.iterations.push_back(step_from_json(s));
    const auto reason = doc.at("termination_reason").get<std::string>();
    bool known = false;
    for (auto r : {TerminationReason::zero_train_error, TerminationReason::improvement_below_threshold,
                   TerminationReason::max_features, TerminationReason::exhausted}) {
      if (to_string(r) == reason) {
        t.termination = r;
        known = true;
      }
    }
    if (!known) throw std::runtime_error("selection trace JSON: unknown termination_reason '" + reason + "'");
    t.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("rejected")) t.rejected = step_from_json(doc.at("rejected"));
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("selection trace JSON: ") + e.what());
  }
}

}  // namespace tsfeat
