#include "tracefn/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace tracefn {

Json to_json(cplx z) {
  Json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

const Check& Report::check(std::string name, std::string bound, double value, double threshold,
                           std::string direction) {
  Check c;
  c.name = std::move(name);
  c.bound = std::move(bound);
  c.value = value;
  c.threshold = threshold;
  c.direction = std::move(direction);
  c.pass = std::isfinite(value) && (c.direction == "min" ? value >= threshold : value <= threshold);
  checks_.push_back(std::move(c));
  return checks_.back();
}

bool Report::ok() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

std::vector<const Check*> Report::failures() const {
  std::vector<const Check*> out;
  for (const auto& c : checks_)
    if (!c.pass) out.push_back(&c);
  return out;
}

Json Report::to_json() const {
  Json j;
  j["command"] = command_;
  j["seed"] = seed_;
  j["params"] = params_;
  j["results"] = results_;
  Json arr = Json::array();
  for (const auto& c : checks_) {
    Json o;
    o["name"] = c.name;
    o["bound"] = c.bound;
    o["value"] = std::isfinite(c.value) ? Json(c.value) : Json(nullptr);
    o["threshold"] = c.threshold;
    o["direction"] = c.direction;
    o["pass"] = c.pass;
    arr.push_back(std::move(o));
  }
  j["checks"] = std::move(arr);
  j["status"] = ok() ? "pass" : "fail";
  return j;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw InvalidArgument("csv row width does not match header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

}  // namespace tracefn
