#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace aitlab {

inline constexpr std::string_view kMachineVersion = "ref3-emit-dbl-read-cpall/1";

/// One assertion of a suite or experiment.
struct Check {
  std::string name;
  nlohmann::json bound;
  nlohmann::json observed;
  bool pass = false;
};

/// Rectangular result table with a fixed column order.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// JSON summary: {config, machine_version, constants, checks:[{name, bound,
/// observed, pass}]}; an optional "table" holds the rows.
struct Summary {
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json constants = nlohmann::json::object();
  std::vector<Check> checks;

  bool all_pass() const;
  /// The first failing check, or nullptr.
  const Check* first_failure() const;
  nlohmann::json to_json() const;
  void add(std::string name, nlohmann::json bound, nlohmann::json observed, bool pass);
};

/// Renders a double with up to 6 significant decimals, "inf" for infinity.
std::string format_number(double v);

}  // namespace aitlab
