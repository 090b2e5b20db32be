#include <algorithm>
#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "numfmt.hpp"
#include "tsfeat/experiment.hpp"

namespace tsfeat {

using ordered_json = nlohmann::ordered_json;

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "text-table" || name == "text") return ReportFormat::text_table;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

namespace {

ordered_json trace_json(const SelectionTrace& t) {
  // Round-trips through the selection module's own schema.
  return ordered_json::parse(to_json(t));
}

ordered_json report_json(const ExperimentReport& r) {
  ordered_json j;
  j["dataset"] = r.dataset;
  j["method"] = std::string(to_string(r.method));
  j["partition"] = r.partition;
  j["partition_seed"] = r.partition_seed;
  j["seed"] = r.seed;
  j["catalog_hash"] = r.catalog_hash;
  j["N"] = r.series_length;
  j["n_train"] = r.n_train;
  j["n_test"] = r.n_test;
  j["n_classes"] = r.n_classes;
  j["n_valid_features"] = r.n_valid_features;
  j["n_feat"] = r.n_feat;
  j["selected"] = r.selected;
  j["trace"] = r.trace ? trace_json(*r.trace) : ordered_json(nullptr);
  j["r_star"] = r.r_star ? ordered_json(*r.r_star) : ordered_json(nullptr);
  j["train_rate"] = r.train_rate;
  j["test_rate"] = r.test_rate;
  j["unscorable_test_ids"] = r.unscorable_test_ids;
  j["timings"] = r.timings;
  j["error"] = r.error;
  return j;
}

ExperimentReport report_from(const nlohmann::json& j) {
  ExperimentReport r;
  r.dataset = j.at("dataset").get<std::string>();
  r.method = parse_method(j.at("method").get<std::string>());
  r.partition = j.at("partition").get<std::string>();
  r.partition_seed = j.at("partition_seed").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.catalog_hash = j.at("catalog_hash").get<std::string>();
  r.series_length = j.at("N").get<std::size_t>();
  r.n_train = j.at("n_train").get<std::size_t>();
  r.n_test = j.at("n_test").get<std::size_t>();
  r.n_classes = j.at("n_classes").get<std::size_t>();
  r.n_valid_features = j.at("n_valid_features").get<std::size_t>();
  r.n_feat = j.at("n_feat").get<std::size_t>();
  r.selected = j.at("selected").get<std::vector<std::string>>();
  if (!j.at("trace").is_null()) r.trace = selection_trace_from_json(j.at("trace").dump());
  if (!j.at("r_star").is_null()) r.r_star = j.at("r_star").get<double>();
  r.train_rate = j.at("train_rate").get<double>();
  r.test_rate = j.at("test_rate").get<double>();
  r.unscorable_test_ids = j.at("unscorable_test_ids").get<std::vector<std::string>>();
  r.timings = j.at("timings").get<std::map<std::string, double>>();
  r.error = j.at("error").get<std::string>();
  return r;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string csv_report(const std::vector<ExperimentReport>& reports) {
  std::ostringstream out;
  out << "dataset,method,partition,partition_seed,seed,N,n_train,n_test,n_classes,n_valid_features,n_feat,"
         "train_rate,test_rate,r_star,selected,termination_reason,catalog_hash,total_seconds,error\n";
  for (const auto& r : reports) {
    double total = 0.0;
    for (const auto& [_, s] : r.timings) total += s;
    std::string error = r.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << r.dataset << ',' << to_string(r.method) << ',' << r.partition << ',' << r.partition_seed << ','
        << r.seed << ',' << r.series_length << ',' << r.n_train << ',' << r.n_test << ',' << r.n_classes << ','
        << r.n_valid_features << ',' << r.n_feat << ',' << detail::format_shortest(r.train_rate) << ','
        << detail::format_shortest(r.test_rate) << ',' << (r.r_star ? detail::format_shortest(*r.r_star) : "")
        << ',' << join(r.selected, ';') << ',' << (r.trace ? std::string(to_string(r.trace->termination)) : "")
        << ',' << r.catalog_hash << ',' << detail::format_shortest(total) << ',' << error << '\n';
  }
  return out.str();
}

std::string percent(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", rate * 100.0);
  return buf;
}

// One row per (dataset, partition), columns in the order of the published
// comparison table; '*' marks the lowest test rate in each row.
std::string text_table(const std::vector<ExperimentReport>& reports) {
  const std::vector<Method> columns = {Method::euclid_1nn, Method::dtw_1nn, Method::dtw_1nn_bestwindow,
                                       Method::feature_linear};
  struct Row {
    std::string name;
    std::map<Method, const ExperimentReport*> cells;
    std::size_t length = 0;
    std::optional<std::size_t> n_feat;
  };
  std::vector<Row> rows;
  for (const auto& r : reports) {
    std::string name = r.dataset;
    if (r.partition != "fixed") name += " (" + r.partition + " " + std::to_string(r.partition_seed) + ")";
    auto it = std::find_if(rows.begin(), rows.end(), [&](const Row& row) { return row.name == name; });
    if (it == rows.end()) {
      rows.push_back({name, {}, 0, std::nullopt});
      it = std::prev(rows.end());
    }
    it->cells[r.method] = &r;
    if (r.error.empty()) {
      it->length = std::max(it->length, r.series_length);
      if (r.method == Method::feature_linear) it->n_feat = r.n_feat;
    }
  }

  std::vector<std::vector<std::string>> table;
  table.push_back({"Dataset", "Euclidean 1-NN (%)", "DTW 1-NN (%)", "DTW 1-NN best WW [r] (%)",
                   "Feature-based linear (%)", "N", "n_feat"});
  for (const auto& row : rows) {
    double best = 2.0;
    for (const auto& [_, r] : row.cells) {
      if (r->error.empty()) best = std::min(best, r->test_rate);
    }
    std::vector<std::string> line{row.name};
    for (Method m : columns) {
      const auto it = row.cells.find(m);
      if (it == row.cells.end()) {
        line.push_back("-");
        continue;
      }
      const auto& r = *it->second;
      if (!r.error.empty()) {
        line.push_back("error");
        continue;
      }
      std::string cell = percent(r.test_rate);
      if (m == Method::dtw_1nn_bestwindow && r.r_star) cell += " [" + detail::format_shortest(*r.r_star) + "]";
      if (r.test_rate == best) cell += " *";
      line.push_back(cell);
    }
    line.push_back(row.length ? std::to_string(row.length) : "-");
    line.push_back(row.n_feat ? std::to_string(*row.n_feat) : "-");
    table.push_back(std::move(line));
  }

  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t c = 0; c < table[r].size(); ++c) {
      if (c) out << " | ";
      out << table[r][c] << std::string(width[c] - table[r][c].size(), ' ');
    }
    out << '\n';
    if (r == 0) {
      for (std::size_t c = 0; c < width.size(); ++c) {
        if (c) out << "-+-";
        out << std::string(width[c], '-');
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace

std::string emit_report(const std::vector<ExperimentReport>& reports, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      ordered_json arr = ordered_json::array();
      for (const auto& r : reports) arr.push_back(report_json(r));
      return arr.dump(2) + "\n";
    }
    case ReportFormat::csv: return csv_report(reports);
    case ReportFormat::text_table: return text_table(reports);
  }
  throw std::invalid_argument("unknown report format");
}

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
  return emit_report(std::vector<ExperimentReport>{report}, format);
}

std::vector<ExperimentReport> reports_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    std::vector<ExperimentReport> out;
    if (doc.is_array()) {
      for (const auto& j : doc) out.push_back(report_from(j));
    } else {
      out.push_back(report_from(doc));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("report JSON: ") + e.what());
  }
}

}  // namespace tsfeat
