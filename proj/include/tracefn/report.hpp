#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tracefn/common.hpp"

namespace tracefn {

using Json = nlohmann::ordered_json;

Json to_json(cplx z);

/// A single asserted comparison. `bound` names the violated estimate.
struct Check {
  std::string name;
  std::string bound;
  double value = 0.0;
  double threshold = 0.0;
  std::string direction = "max";  // "max": value <= threshold
  bool pass = false;
};

/// Structured record of one run. Output has no timestamps or host data, so
/// equal inputs give byte-identical files.
class Report {
 public:
  Report(std::string command, u64 seed) : command_(std::move(command)), seed_(seed) {}

  Json& params() { return params_; }
  Json& results() { return results_; }

  /// value <= threshold (or >= for direction "min").
  const Check& check(std::string name, std::string bound, double value, double threshold,
                     std::string direction = "max");
  const std::vector<Check>& checks() const { return checks_; }
  bool ok() const;
  std::vector<const Check*> failures() const;

  Json to_json() const;
  std::string dump() const { return to_json().dump(2) + "\n"; }

 private:
  std::string command_;
  u64 seed_;
  Json params_ = Json::object();
  Json results_ = Json::object();
  std::vector<Check> checks_;
};

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_double(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace tracefn
