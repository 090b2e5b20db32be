#include "tsfeat/feature_matrix.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "numfmt.hpp"
#include "tsfeat/detail/parallel.hpp"

namespace tsfeat {

namespace {

void require_unique(const std::vector<std::string>& ids, const char* what) {
  const std::set<std::string> seen(ids.begin(), ids.end());
  if (seen.size() != ids.size()) throw std::invalid_argument(std::string("duplicate ") + what + " id");
}

}  // namespace

FeatureMatrix::FeatureMatrix(std::vector<std::string> series_ids, std::vector<std::string> labels,
                             std::vector<std::string> feature_ids)
    : series_ids_(std::move(series_ids)),
      labels_(std::move(labels)),
      feature_ids_(std::move(feature_ids)),
      cells_(series_ids_.size() * feature_ids_.size(), FeatureValue::domain_error()) {
  if (labels_.size() != series_ids_.size()) {
    throw std::invalid_argument("FeatureMatrix: one label per row required");
  }
  require_unique(series_ids_, "series");
  require_unique(feature_ids_, "feature");
}

std::size_t FeatureMatrix::column_index(const std::string& feature_id) const {
  for (std::size_t j = 0; j < feature_ids_.size(); ++j) {
    if (feature_ids_[j] == feature_id) return j;
  }
  throw std::out_of_range("unknown feature id '" + feature_id + "'");
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> rows) const {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  for (std::size_t r : rows) {
    ids.push_back(series_ids_.at(r));
    labels.push_back(labels_.at(r));
  }
  FeatureMatrix out(std::move(ids), std::move(labels), feature_ids_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) out.at(i, j) = at(rows[i], j);
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_columns(std::span<const std::string> feature_ids) const {
  std::vector<std::size_t> idx;
  for (const auto& id : feature_ids) idx.push_back(column_index(id));
  FeatureMatrix out(series_ids_, labels_, {feature_ids.begin(), feature_ids.end()});
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) out.at(i, j) = at(i, idx[j]);
  }
  return out;
}

std::vector<std::vector<double>> FeatureMatrix::real_rows(std::span<const std::size_t> cols) const {
  std::vector<std::vector<double>> out(rows(), std::vector<double>(cols.size()));
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto& v = at(i, cols[j]);
      if (v.is_special()) {
        throw std::domain_error("special value in row '" + series_ids_[i] + "', column '" +
                                feature_ids_[cols[j]] + "'");
      }
      out[i][j] = v.value();
    }
  }
  return out;
}

FeatureMatrix compute_matrix(const Catalog& catalog, std::span<const TimeSeries> series, unsigned threads) {
  if (catalog.empty()) throw std::invalid_argument("compute_matrix: empty catalog");
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  for (const auto& s : series) {
    ids.push_back(s.id());
    labels.push_back(s.label());
  }
  FeatureMatrix m(std::move(ids), std::move(labels), catalog.ids());
  const std::size_t n_cols = catalog.size();
  detail::parallel_for(series.size() * n_cols, threads, [&](std::size_t cell) {
    const std::size_t row = cell / n_cols;
    const std::size_t col = cell % n_cols;
    m.at(row, col) = catalog.evaluate(col, series[row].values());
  });
  return m;
}

std::vector<std::string> filter_special_values(const FeatureMatrix& m,
                                               std::optional<std::span<const std::size_t>> rows) {
  std::vector<std::size_t> all;
  if (!rows) {
    all.resize(m.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  }
  const std::span<const std::size_t> scope = rows ? *rows : std::span<const std::size_t>(all);
  std::vector<std::string> valid;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    bool ok = true;
    for (std::size_t r : scope) {
      if (m.at(r, j).is_special()) {
        ok = false;
        break;
      }
    }
    if (ok) valid.push_back(m.feature_ids()[j]);
  }
  return valid;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void check_field(const std::string& s) {
  if (s.find_first_of(",\n\r") != std::string::npos) {
    throw std::invalid_argument("CSV field contains a separator: '" + s + "'");
  }
}

}  // namespace

void write_matrix_csv(std::ostream& out, const FeatureMatrix& m) {
  out << "series_id,label";
  for (const auto& id : m.feature_ids()) {
    check_field(id);
    out << ',' << id;
  }
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    check_field(m.series_ids()[i]);
    check_field(m.labels()[i]);
    out << m.series_ids()[i] << ',' << m.labels()[i];
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& v = m.at(i, j);
      out << ',' << (v.is_special() ? std::string("NA") : detail::format_shortest(v.value()));
    }
    out << '\n';
  }
}

FeatureMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("feature matrix CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "series_id" || header[1] != "label") {
    throw std::runtime_error("feature matrix CSV: header must start with series_id,label");
  }
  std::vector<std::string> feature_ids(header.begin() + 2, header.end());

  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> body;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("feature matrix CSV: line " + std::to_string(line_no) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(header.size()));
    }
    ids.push_back(fields[0]);
    labels.push_back(fields[1]);
    body.push_back(std::move(fields));
  }

  FeatureMatrix m(std::move(ids), std::move(labels), std::move(feature_ids));
  for (std::size_t i = 0; i < body.size(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& tok = body[i][j + 2];
      if (tok == "NA") {
        m.at(i, j) = FeatureValue::domain_error();
        continue;
      }
      const auto v = detail::parse_double(tok);
      if (!v) throw std::runtime_error("feature matrix CSV: bad number '" + tok + "'");
      m.at(i, j) = FeatureValue::real(*v);
    }
  }
  return m;
}

}  // namespace tsfeat
