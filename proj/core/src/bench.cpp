#include <chrono>
#include <map>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <stdexcept>

#include "numfmt.hpp"
#include "tsfeat/experiment.hpp"

namespace tsfeat {

namespace {

double fit_loglog_slope(const std::vector<double>& lengths, const std::vector<double>& seconds) {
  const std::size_t n = lengths.size();
  if (n < 2) return std::nan("");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(lengths[i]);
    const double y = std::log(seconds[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace

BenchTable bench_scaling(const Catalog& catalog, const std::vector<std::string>& feature_ids,
                         const std::vector<std::size_t>& lengths, std::size_t repeats, std::uint64_t seed) {
  if (repeats == 0) throw std::invalid_argument("bench_scaling: repeats must be positive");
  std::vector<std::size_t> columns;
  for (const auto& id : feature_ids) columns.push_back(catalog.index_of(id));

  BenchTable table;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> points;
  volatile double sink = 0.0;
  for (std::size_t length : lengths) {
    std::mt19937_64 rng(seed + length);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> noise(length);
    for (double& v : noise) v = gauss(rng);

    for (std::size_t f = 0; f < feature_ids.size(); ++f) {
      std::vector<double> samples(repeats);
      sink = sink + catalog.evaluate(columns[f], noise).value_or(0.0);  // warm-up, untimed
      for (std::size_t r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        const FeatureValue v = catalog.evaluate(columns[f], noise);
        samples[r] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        sink = sink + v.value_or(0.0);
      }
      double mean = 0.0;
      for (double s : samples) mean += s;
      mean /= static_cast<double>(repeats);
      double var = 0.0;
      for (double s : samples) var += (s - mean) * (s - mean);
      const double sd = repeats > 1 ? std::sqrt(var / static_cast<double>(repeats - 1)) : 0.0;
      table.rows.push_back({feature_ids[f], length, repeats, mean, sd});
      points[feature_ids[f]].first.push_back(static_cast<double>(length));
      points[feature_ids[f]].second.push_back(mean);
    }
  }
  for (const auto& [id, xy] : points) table.slopes[id] = fit_loglog_slope(xy.first, xy.second);
  return table;
}

std::string emit_bench(const BenchTable& table, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::json: {
      nlohmann::ordered_json doc;
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto& r : table.rows) {
        rows.push_back({{"feature", r.feature},
                        {"N", r.length},
                        {"repeats", r.repeats},
                        {"mean_seconds", r.mean_seconds},
                        {"std_seconds", r.std_seconds}});
      }
      doc["rows"] = rows;
      doc["loglog_slope"] = table.slopes;
      out << doc.dump(2) << '\n';
      break;
    }
    case ReportFormat::csv:
      out << "feature,N,repeats,mean_seconds,std_seconds,loglog_slope\n";
      for (const auto& r : table.rows) {
        out << r.feature << ',' << r.length << ',' << r.repeats << ',' << detail::format_shortest(r.mean_seconds)
            << ',' << detail::format_shortest(r.std_seconds) << ','
            << detail::format_shortest(table.slopes.at(r.feature)) << '\n';
      }
      break;
    case ReportFormat::text_table: {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-20s %10s %8s %16s %16s\n", "feature", "N", "repeats", "mean (ms)", "std (ms)");
      out << buf;
      for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof buf, "%-20s %10zu %8zu %16.6f %16.6f\n", r.feature.c_str(), r.length, r.repeats,
                      r.mean_seconds * 1e3, r.std_seconds * 1e3);
        out << buf;
      }
      out << '\n';
      for (const auto& [id, slope] : table.slopes) {
        std::snprintf(buf, sizeof buf, "%-20s log-log slope %.3f\n", id.c_str(), slope);
        out << buf;
      }
      break;
    }
  }
  return out.str();
}

}  // namespace tsfeat
