#include "tsfeat/ucr.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "numfmt.hpp"

namespace tsfeat {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::vector<TimeSeries> parse_ucr(std::istream& in, std::string_view id_prefix) {
  std::vector<TimeSeries> out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t length = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 3) {
      throw std::runtime_error("UCR line " + std::to_string(line_no) + ": need a label and at least 2 values");
    }
    const std::size_t n = tokens.size() - 1;
    if (length == 0) {
      length = n;
    } else if (n != length) {
      throw std::runtime_error("UCR line " + std::to_string(line_no) + ": " + std::to_string(n) +
                               " values, expected " + std::to_string(length));
    }
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto v = detail::parse_double(tokens[k + 1]);
      if (!v) {
        throw std::runtime_error("UCR line " + std::to_string(line_no) + ": non-numeric token '" +
                                 std::string(tokens[k + 1]) + "'");
      }
      values[k] = *v;
    }
    try {
      out.emplace_back(std::string(id_prefix) + std::to_string(out.size()), std::string(tokens[0]), std::move(values));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("UCR line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (out.empty()) throw std::runtime_error("UCR input contains no records");
  return out;
}

std::vector<TimeSeries> parse_ucr_file(const std::filesystem::path& path, std::string_view id_prefix) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open UCR file '" + path.string() + "'");
  try {
    return parse_ucr(in, id_prefix);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_ucr(std::ostream& out, std::span<const TimeSeries> series) {
  for (const auto& s : series) {
    out << s.label();
    for (double v : s.values()) out << ' ' << detail::format_shortest(v);
    out << '\n';
  }
}

Manifest Manifest::parse(const std::string& json_text, const std::filesystem::path& base_dir) {
  std::map<std::string, ManifestEntry> entries;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    for (const auto& [name, entry] : doc.items()) {
      auto resolve = [&](const char* key) {
        std::filesystem::path p = entry.at(key).get<std::string>();
        return p.is_absolute() ? p : base_dir / p;
      };
      entries[name] = {resolve("train_path"), resolve("test_path")};
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("manifest: ") + e.what());
  }
  return Manifest(std::move(entries));
}

Manifest Manifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.parent_path());
}

const ManifestEntry& Manifest::at(const std::string& name) const {
  const auto it = entries_.find(name);
  if (it == entries_.end()) throw std::out_of_range("dataset '" + name + "' not in manifest");
  return it->second;
}

std::vector<std::string> Manifest::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : entries_) out.push_back(name);
  return out;
}

Dataset Manifest::load_dataset(const std::string& name) const {
  const auto& e = at(name);
  return Dataset(name, parse_ucr_file(e.train_path, name + "/train/"), parse_ucr_file(e.test_path, name + "/test/"));
}

Dataset resample_partition(const Dataset& dataset, const PartitionSpec& spec) {
  if (spec.mode == PartitionSpec::Mode::fixed) return dataset;

  std::vector<const TimeSeries*> pool;
  for (const auto& s : dataset.train()) pool.push_back(&s);
  for (const auto& s : dataset.test()) pool.push_back(&s);

  std::map<std::string, std::size_t> train_count;
  for (const auto& s : dataset.train()) ++train_count[s.label()];

  std::mt19937_64 rng(spec.seed);
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (const auto& label : dataset.classes()) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i]->label() == label) members.push_back(i);
    }
    if (members.empty()) throw std::runtime_error("resample_partition: class '" + label + "' absent from pool");
    // Fisher-Yates with raw engine output, so the draw is the same on every
    // standard library.
    for (std::size_t k = members.size(); k > 1; --k) std::swap(members[k - 1], members[rng() % k]);
    const std::size_t n_train = train_count[label];
    train_idx.insert(train_idx.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_train));
    test_idx.insert(test_idx.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train), members.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  std::vector<TimeSeries> train;
  std::vector<TimeSeries> test;
  for (std::size_t i : train_idx) train.push_back(*pool[i]);
  for (std::size_t i : test_idx) test.push_back(*pool[i]);
  return Dataset(dataset.name(), std::move(train), std::move(test));
}

}  // namespace tsfeat
