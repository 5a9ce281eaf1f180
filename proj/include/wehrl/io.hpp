#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wehrl/entropies.hpp"
#include "wehrl/eur.hpp"
#include "wehrl/quadrature.hpp"
#include "wehrl/state.hpp"

namespace wehrl {

enum class Format { csv, json };

std::string to_string(Format f);
Format parse_format(const std::string& name);

// One table cell. Missing optional values are written as empty CSV fields and
// JSON nulls.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Scalars that belong to the whole table (crossover points, tolerances...).
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  void add_row(std::vector<Cell> row);
};

Cell cell(const std::optional<double>& v);

// CSV: header row, '.' decimal separator, 12 significant digits.
void write_csv(const Table& table, std::ostream& out);
// {"command": ..., "meta": {...}, "rows": [{column: value, ...}, ...]}
void write_json(const Table& table, std::ostream& out);
void write_table(const Table& table, Format format, std::ostream& out);

std::string format_number(double v);

nlohmann::ordered_json state_to_json(const StateSpec& spec);
// Inverse of state_to_json. Throws Error(invalid_parameter) on malformed input;
// the result still has to be validated.
StateSpec state_from_json(const nlohmann::json& j);

nlohmann::ordered_json quadrature_to_json(const QuadratureSpec& spec);
// Fields absent from j keep the values in `base`.
QuadratureSpec quadrature_from_json(const nlohmann::json& j, QuadratureSpec base = {});

nlohmann::ordered_json to_json(const EurReport& r);
nlohmann::ordered_json to_json(const EntropyReport& r);

// Covariance files: JSON (nested rows, a flat row-major array, or an object
// {"v": ..., "partition": [n_a, n_b]}) or CSV rows. Throws Error(invalid_parameter).
struct CovarianceInput {
  Matrix v;
  std::optional<ModePartition> partition;
};
CovarianceInput read_covariance(const std::string& path);
CovarianceInput parse_covariance(const std::string& text, bool json);

}  // namespace wehrl
