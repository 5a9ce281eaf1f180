#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wehrl/io.hpp"
#include "wehrl/quadrature.hpp"

namespace wehrl::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_numeric = 2;
inline constexpr int exit_invalid = 3;

// Environment variable holding the default parallelism degree.
inline constexpr const char* parallelism_env = "WEHRL_PARALLELISM";

// A complete, serializable description of one CLI run. The --config file uses
// the JSON form of this struct; flags given on the command line win over it.
struct RunConfig {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  QuadratureSpec quadrature;
  std::optional<std::string> output;
  Format format = Format::csv;
  int parallelism = 1;
};

nlohmann::ordered_json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

const std::vector<std::string>& commands();

// Runs the computation described by config. Throws wehrl::Error.
Table execute(const RunConfig& config);

// Thrown by execute when a row violates an inequality the command checks.
// Maps to exit_numeric; the table is still emitted.
struct CheckFailed {
  Table table;
  std::string message;
};

// Thrown by parse_arguments for --help; carries the rendered usage text.
struct HelpRequested {
  std::string text;
};

// Parses argv-style arguments (without the program name).
RunConfig parse_arguments(const std::vector<std::string>& args);

// Full command-line entry point; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wehrl::cli
