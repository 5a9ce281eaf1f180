#include "wehrl/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "wehrl/error.hpp"

namespace wehrl {

namespace {

using ojson = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string csv_field(const Cell& c) {
  return std::visit(overloaded{
                        [](std::monostate) { return std::string(); },
                        [](double v) { return format_number(v); },
                        [](long long v) { return std::to_string(v); },
                        [](bool v) { return std::string(v ? "true" : "false"); },
                        [](const std::string& s) {
                          if (s.find_first_of(",\"\n") == std::string::npos) {
                            return s;
                          }
                          std::string quoted = "\"";
                          for (char ch : s) {
                            quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                          }
                          return quoted + "\"";
                        },
                    },
                    c);
}

ojson json_value(const Cell& c) {
  return std::visit(overloaded{
                        [](std::monostate) { return ojson(nullptr); },
                        [](double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); },
                        [](long long v) { return ojson(v); },
                        [](bool v) { return ojson(v); },
                        [](const std::string& s) { return ojson(s); },
                    },
                    c);
}

ojson optional_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

[[noreturn]] void bad_input(const std::string& msg) { throw Error(ErrorCode::invalid_parameter, msg); }

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    bad_input("covariance matrix is empty");
  }
  const auto n = rows.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      bad_input("covariance matrix is not square");
    }
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    bad_input("covariance must be a non-empty array");
  }
  std::vector<std::vector<double>> rows;
  if (j.front().is_array()) {
    for (const auto& r : j) {
      rows.push_back(r.get<std::vector<double>>());
    }
  } else {
    const auto flat = j.get<std::vector<double>>();
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (n * n != flat.size()) {
      bad_input("flat covariance array length is not a square");
    }
    for (std::size_t i = 0; i < n; ++i) {
      rows.emplace_back(flat.begin() + i * n, flat.begin() + (i + 1) * n);
    }
  }
  return matrix_from_rows(rows);
}

}  // namespace

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

Format parse_format(const std::string& name) {
  if (name == "csv") {
    return Format::csv;
  }
  if (name == "json") {
    return Format::json;
  }
  bad_input("unknown output format '" + name + "'");
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::dimension_mismatch, "row width does not match the header");
  }
  rows.push_back(std::move(row));
}

Cell cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

std::string format_number(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(12) << v;
  return out.str();
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_field(row[i]);
    }
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  ojson doc;
  doc["command"] = table.command;
  doc["meta"] = table.meta;
  doc["rows"] = ojson::array();
  for (const auto& row : table.rows) {
    ojson r = ojson::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      r[table.columns[i]] = json_value(row[i]);
    }
    doc["rows"].push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

void write_table(const Table& table, Format format, std::ostream& out) {
  if (format == Format::csv) {
    write_csv(table, out);
  } else {
    write_json(table, out);
  }
}

ojson state_to_json(const StateSpec& spec) {
  ojson j;
  j["kind"] = kind_name(spec);
  std::visit(overloaded{
                 [&](const Fock& s) { j["n"] = s.n; },
                 [&](const FockMixture& s) {
                   j["weights"] = ojson::array();
                   for (const auto& w : s.weights) {
                     j["weights"].push_back({{"n", w.n}, {"q", w.q}});
                   }
                 },
                 [&](const Thermal& s) { j["beta_omega"] = s.beta_omega; },
                 [&](const GaussianSpec& s) {
                   ojson rows = ojson::array();
                   for (int r = 0; r < s.v.rows(); ++r) {
                     ojson row = ojson::array();
                     for (int c = 0; c < s.v.cols(); ++c) {
                       row.push_back(s.v(r, c));
                     }
                     rows.push_back(row);
                   }
                   j["v"] = rows;
                   j["partition"] = {s.partition.n_a, s.partition.n_b};
                 },
                 [&](const TwoModeSqueezed& s) { j["lambda"] = s.lambda; },
                 [&](const Noon& s) { j["excitation"] = s.excitation; },
             },
             spec);
  return j;
}

StateSpec state_from_json(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "fock") {
      return Fock{j.at("n").get<int>()};
    }
    if (kind == "fock_mixture") {
      FockMixture m;
      for (const auto& w : j.at("weights")) {
        m.weights.push_back({w.at("n").get<int>(), w.at("q").get<double>()});
      }
      return m;
    }
    if (kind == "thermal") {
      return Thermal{j.at("beta_omega").get<double>()};
    }
    if (kind == "gaussian") {
      GaussianSpec g;
      g.v = matrix_from_json(j.at("v"));
      const auto p = j.at("partition").get<std::vector<int>>();
      if (p.size() != 2) {
        bad_input("partition must be [n_a, n_b]");
      }
      g.partition = {p[0], p[1]};
      return g;
    }
    if (kind == "tmss") {
      return TwoModeSqueezed{j.at("lambda").get<double>()};
    }
    if (kind == "noon") {
      return Noon{j.at("excitation").get<int>()};
    }
    bad_input("unknown state kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    bad_input(std::string("malformed state: ") + e.what());
  }
}

ojson quadrature_to_json(const QuadratureSpec& spec) {
  ojson j;
  j["strategy"] = spec.strategy ? to_string(*spec.strategy) : std::string("auto");
  j["radial_nodes"] = spec.radial_nodes;
  j["angular_nodes"] = spec.angular_nodes;
  j["cartesian_nodes_per_dim"] = spec.cartesian_nodes_per_dim;
  j["radial_cutoff"] = spec.radial_cutoff;
  j["abs_tol"] = spec.abs_tol;
  j["rel_tol"] = spec.rel_tol;
  j["max_escalations"] = spec.max_escalations;
  return j;
}

QuadratureSpec quadrature_from_json(const nlohmann::json& j, QuadratureSpec base) {
  if (!j.is_object()) {
    bad_input("quadrature settings must be a JSON object");
  }
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "strategy") {
        base.strategy = parse_strategy(value.get<std::string>());
      } else if (key == "radial_nodes") {
        base.radial_nodes = value.get<int>();
      } else if (key == "angular_nodes") {
        base.angular_nodes = value.get<int>();
      } else if (key == "cartesian_nodes_per_dim") {
        base.cartesian_nodes_per_dim = value.get<int>();
      } else if (key == "radial_cutoff") {
        base.radial_cutoff = value.get<double>();
      } else if (key == "abs_tol") {
        base.abs_tol = value.get<double>();
      } else if (key == "rel_tol") {
        base.rel_tol = value.get<double>();
      } else if (key == "max_escalations") {
        base.max_escalations = value.get<int>();
      } else if (key == "parallelism") {
        base.parallelism = value.get<int>();
      } else {
        bad_input("unknown quadrature setting '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    bad_input(std::string("malformed quadrature settings: ") + e.what());
  }
  base.validate();
  return base;
}

ojson to_json(const EurReport& r) {
  ojson j;
  j["state"] = state_to_json(r.state);
  j["grid_param"] = r.grid_param;
  j["wl_lhs"] = r.wl_lhs;
  j["bbm_lhs"] = r.bbm_lhs;
  j["fl_lhs"] = r.fl_lhs;
  j["bound"] = r.bound;
  j["wl_deficit"] = r.wl_deficit;
  j["bbm_deficit"] = r.bbm_deficit;
  j["fl_deficit"] = r.fl_deficit;
  j["cross_check_delta"] = optional_json(r.cross_check_delta);
  return j;
}

ojson to_json(const EntropyReport& r) {
  ojson j;
  j["state"] = state_to_json(r.state);
  j["wehrl"] = r.wehrl;
  j["wehrl_method"] = to_string(r.wehrl_method);
  j["differential_x"] = optional_json(r.differential_x);
  j["differential_p"] = optional_json(r.differential_p);
  j["von_neumann"] = optional_json(r.von_neumann);
  j["cross_check_delta"] = optional_json(r.cross_check_delta);
  return j;
}

CovarianceInput parse_covariance(const std::string& text, bool json) {
  CovarianceInput in;
  if (json) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      bad_input(std::string("covariance file is not valid JSON: ") + e.what());
    }
    try {
      if (j.is_object()) {
        in.v = matrix_from_json(j.at("v"));
        if (j.contains("partition")) {
          const auto p = j.at("partition").get<std::vector<int>>();
          if (p.size() != 2) {
            bad_input("partition must be [n_a, n_b]");
          }
          in.partition = ModePartition{p[0], p[1]};
        }
      } else {
        in.v = matrix_from_json(j);
      }
    } catch (const nlohmann::json::exception& e) {
      bad_input(std::string("malformed covariance: ") + e.what());
    }
    return in;
  }
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') {
      continue;
    }
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(field, &used);
      } catch (const std::exception&) {
        bad_input("covariance CSV has a non-numeric field '" + field + "'");
      }
      if (field.find_first_not_of(" \t\r", used) != std::string::npos) {
        bad_input("covariance CSV has a non-numeric field '" + field + "'");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  in.v = matrix_from_rows(rows);
  return in;
}

CovarianceInput read_covariance(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    bad_input("cannot open covariance file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = first != std::string::npos && (text[first] == '[' || text[first] == '{');
  return parse_covariance(text, json);
}

}  // namespace wehrl
