#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tracefn/common.hpp"

namespace tracefn {

/// One frozen ratio threshold. `observed` is the extreme value seen on the
/// calibration grid; `suggested_threshold` is twice that (half for lower
/// bounds). `threshold` is the value the assertions use.
struct ManifestEntry {
  std::string suite;
  std::string family;
  std::string statistic;          // what the number measures
  std::string direction = "max";  // "max": value <= threshold; "min": value >= threshold
  std::vector<u64> q_grid;
  double observed = 0.0;
  double suggested_threshold = 0.0;
  double threshold = 0.0;
  std::string ref;  // name of the bound being tested
};

struct Manifest {
  int version = 1;
  u64 seed = 0;
  std::vector<ManifestEntry> entries;

  const ManifestEntry* find(const std::string& suite) const;
  /// Threshold of a suite; throws InvalidArgument when it is missing.
  double threshold(const std::string& suite) const;
  void upsert(ManifestEntry e);
};

/// TRACEFN_LAB_MANIFEST when set, else the path baked in at build time.
std::string default_manifest_path();

Manifest load_manifest(const std::string& path);
/// Entries sorted by suite; output is byte-stable for equal content.
void save_manifest(const Manifest& m, const std::string& path);
std::string manifest_to_string(const Manifest& m);

/// Thresholds fixed by the acceptance contract, with descriptive fields
/// but no observations.
std::vector<ManifestEntry> pinned_entries();
std::vector<std::string> suite_names();

/// Runs one suite over its calibration grid (or `grid` when given) and
/// returns the filled entry.
ManifestEntry calibrate_suite(const std::string& suite, const std::optional<std::vector<u64>>& grid, u64 seed);

}  // namespace tracefn
