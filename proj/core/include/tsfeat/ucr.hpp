#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsfeat/timeseries.hpp"

namespace tsfeat {

/// Parses UCR text: one record per line, a class label followed by the
/// values, separated by commas and/or whitespace. Blank lines are skipped.
/// Series ids are `<id_prefix><record index>`. Throws std::runtime_error
/// naming the line on ragged rows, a bad number, or an empty input.
std::vector<TimeSeries> parse_ucr(std::istream& in, std::string_view id_prefix = "");
std::vector<TimeSeries> parse_ucr_file(const std::filesystem::path& path, std::string_view id_prefix = "");

/// Whitespace-separated UCR text with shortest round-trip decimals.
void write_ucr(std::ostream& out, std::span<const TimeSeries> series);

struct ManifestEntry {
  std::filesystem::path train_path;
  std::filesystem::path test_path;
};

/// name -> {train_path, test_path}. Relative paths resolve against the
/// manifest's directory.
class Manifest {
 public:
  Manifest() = default;
  explicit Manifest(std::map<std::string, ManifestEntry> entries) : entries_(std::move(entries)) {}

  static Manifest load(const std::filesystem::path& path);
  static Manifest parse(const std::string& json_text, const std::filesystem::path& base_dir);

  bool contains(const std::string& name) const { return entries_.contains(name); }
  /// Throws std::out_of_range for an unknown name.
  const ManifestEntry& at(const std::string& name) const;
  std::vector<std::string> names() const;

  /// Reads both partitions; series ids are `<name>/train/<i>` and `<name>/test/<i>`.
  Dataset load_dataset(const std::string& name) const;

 private:
  std::map<std::string, ManifestEntry> entries_;
};

struct PartitionSpec {
  enum class Mode { fixed, resampled };
  Mode mode = Mode::fixed;
  std::uint64_t seed = 0;
};

/// Fixed mode returns the dataset unchanged. Resampled mode pools train and
/// test and redraws, per class, as many train series as the fixed partition
/// had, using a seeded shuffle.
Dataset resample_partition(const Dataset& dataset, const PartitionSpec& spec);

}  // namespace tsfeat
