#include "aitlab/report.hpp"

#include <cmath>
#include <cstdio>

namespace aitlab {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(columns[i]);
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json Table::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) obj[columns[i]] = row[i];
    out.push_back(std::move(obj));
  }
  return out;
}

bool Summary::all_pass() const { return first_failure() == nullptr; }

const Check* Summary::first_failure() const {
  for (const Check& c : checks) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

nlohmann::json Summary::to_json() const {
  nlohmann::json out;
  out["config"] = config;
  out["machine_version"] = std::string(kMachineVersion);
  out["constants"] = constants;
  out["checks"] = nlohmann::json::array();
  for (const Check& c : checks) {
    out["checks"].push_back(
        {{"name", c.name}, {"bound", c.bound}, {"observed", c.observed}, {"pass", c.pass}});
  }
  return out;
}

void Summary::add(std::string name, nlohmann::json bound, nlohmann::json observed, bool pass) {
  checks.push_back({std::move(name), std::move(bound), std::move(observed), pass});
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

}  // namespace aitlab
