#include "wehrl/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wehrl/detail/parallel.hpp"
#include "wehrl/entropies.hpp"
#include "wehrl/error.hpp"
#include "wehrl/eur.hpp"
#include "wehrl/gaussian.hpp"
#include "wehrl/husimi.hpp"

namespace wehrl::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int fock_n_max_limit = 50;
constexpr int noon_n_max_limit = 10;
constexpr double bound_slack = 1e-9;

[[noreturn]] void bad_input(const std::string& msg) { throw Error(ErrorCode::invalid_parameter, msg); }

template <typename T>
T param(const ojson& p, const char* key, T fallback) {
  if (!p.contains(key)) {
    return fallback;
  }
  try {
    return p.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad_input(std::string("parameter '") + key + "' has the wrong type");
  }
}

QuadratureSpec inner_spec(const RunConfig& c) {
  QuadratureSpec s = c.quadrature;
  s.parallelism = 1;
  return s;
}

QuadratureSpec outer_spec(const RunConfig& c) {
  QuadratureSpec s = c.quadrature;
  s.parallelism = c.parallelism;
  return s;
}

std::vector<std::string> eur_columns() {
  return {"grid_param", "wl_lhs", "bbm_lhs", "fl_lhs", "bound", "wl_deficit", "bbm_deficit", "fl_deficit",
          "cross_check_delta"};
}

std::vector<Cell> eur_cells(const EurReport& r) {
  return {r.grid_param, r.wl_lhs, r.bbm_lhs, r.fl_lhs, r.bound, r.wl_deficit, r.bbm_deficit, r.fl_deficit,
          cell(r.cross_check_delta)};
}

Table eur_fock(const RunConfig& c) {
  const int n_max = param(c.parameters, "n_max", fock_n_max_limit);
  const bool asymptotics = param(c.parameters, "asymptotics", false);
  if (n_max < 0 || n_max > fock_n_max_limit) {
    bad_input("--n-max must lie in [0, " + std::to_string(fock_n_max_limit) + "]");
  }
  SweepSpec sweep;
  sweep.family = SweepFamily::fock;
  sweep.n_max = n_max;
  sweep.asymptotics = asymptotics;
  Table t;
  t.command = c.command;
  t.columns = eur_columns();
  if (asymptotics) {
    t.columns.push_back("wl_asymptotic");
    t.columns.push_back("bbm_asymptotic");
  }
  for (const auto& r : eur_sweep(sweep, outer_spec(c))) {
    auto row = eur_cells(r);
    if (asymptotics) {
      row.push_back(cell(r.wl_asymptotic));
      row.push_back(cell(r.bbm_asymptotic));
    }
    t.add_row(std::move(row));
  }
  return t;
}

Table eur_mixture(const RunConfig& c) {
  SweepSpec sweep;
  sweep.family = SweepFamily::mixture01;
  sweep.steps = param(c.parameters, "steps", sweep.steps);
  const auto reports = eur_sweep(sweep, outer_spec(c));
  const auto crossover = mixture_crossover(inner_spec(c));
  Table t;
  t.command = c.command;
  t.columns = eur_columns();
  t.columns.push_back("crossover_q");
  for (const auto& r : reports) {
    auto row = eur_cells(r);
    row.push_back(cell(crossover));
    t.add_row(std::move(row));
  }
  t.meta["crossover_q"] = crossover ? ojson(*crossover) : ojson(nullptr);
  return t;
}

Table eur_thermal(const RunConfig& c) {
  SweepSpec sweep;
  sweep.family = SweepFamily::thermal;
  sweep.beta_min = param(c.parameters, "beta_min", sweep.beta_min);
  sweep.beta_max = param(c.parameters, "beta_max", sweep.beta_max);
  sweep.points = param(c.parameters, "points", sweep.points);
  Table t;
  t.command = c.command;
  t.columns = eur_columns();
  for (const auto& r : eur_sweep(sweep, outer_spec(c))) {
    t.add_row(eur_cells(r));
  }
  return t;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> g;
  for (int i = 0; i < 10; ++i) {
    g.push_back(i / 10.0);
  }
  return g;
}

Table bipartite_tmss(const RunConfig& c) {
  const auto grid = param(c.parameters, "lambda_grid", default_lambda_grid());
  if (grid.empty()) {
    bad_input("--lambda-grid is empty");
  }
  std::vector<ValidatedState> states;
  for (double l : grid) {
    states.push_back(tmss_state(l));
  }
  const auto spec = inner_spec(c);
  const auto results = detail::parallel_map<BipartiteEntropies>(
      static_cast<int>(grid.size()), c.parallelism, [&](int i) { return wehrl_bipartite(make_husimi(states[i]), spec); });

  Table t;
  t.command = c.command;
  t.columns = {"lambda", "iw_closed", "iw_numeric", "conditional_closed", "conditional_numeric", "quantum_mi",
               "bound_holds", "cross_check_delta"};
  std::string failures;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double l = grid[i];
    const auto witness = gaussian_witness(*states[i].covariance());
    const auto mi = mutual_information_from(results[i]);
    const auto ce = conditional_entropy_from(results[i]);
    const double qmi = quantum_mutual_information_tmss(l);
    const bool holds = mi.value <= qmi + bound_slack;
    if (!holds) {
      failures += " lambda=" + format_number(l);
    }
    const double delta = std::max(std::abs(mi.value - witness.mutual), std::abs(ce.value - witness.conditional));
    t.add_row({l, witness.mutual, mi.value, witness.conditional, ce.value, qmi, holds, delta});
  }
  if (!failures.empty()) {
    throw CheckFailed{t, "Wehrl mutual information exceeds the quantum mutual information at" + failures};
  }
  return t;
}

Table bipartite_noon(const RunConfig& c) {
  const int n_max = param(c.parameters, "n_max", noon_n_max_limit);
  if (n_max < 0 || n_max > noon_n_max_limit) {
    bad_input("--n-max must lie in [0, " + std::to_string(noon_n_max_limit) + "]");
  }
  const auto spec = inner_spec(c);
  const auto results = detail::parallel_map<BipartiteEntropies>(
      n_max + 1, c.parallelism, [&](int n) { return wehrl_bipartite(make_husimi(noon_state(n)), spec); });

  Table t;
  t.command = c.command;
  t.columns = {"n", "iw", "iw_cross_check", "conditional", "conditional_cross_check", "quantum_mi", "bound_holds",
               "error_estimate"};
  std::string failures;
  for (int n = 0; n <= n_max; ++n) {
    const auto mi = mutual_information_from(results[n]);
    const auto ce = conditional_entropy_from(results[n]);
    const double qmi = quantum_mutual_information_noon(n);
    const bool holds = mi.value <= qmi + bound_slack;
    if (!holds) {
      failures += " N=" + std::to_string(n);
    }
    t.add_row({static_cast<long long>(n), mi.value, mi.cross_check, ce.value, ce.cross_check, qmi, holds,
               std::max(mi.error_estimate, ce.error_estimate)});
  }
  if (!failures.empty()) {
    throw CheckFailed{t, "Wehrl mutual information exceeds the quantum mutual information at" + failures};
  }
  return t;
}

ModePartition partition_param(const ojson& p, const std::optional<ModePartition>& from_file, int dimension) {
  if (p.contains("partition")) {
    const auto v = param(p, "partition", std::vector<int>{});
    if (v.size() != 2) {
      bad_input("--partition takes two integers N M");
    }
    return {v[0], v[1]};
  }
  if (from_file) {
    return *from_file;
  }
  if (dimension == 4) {
    return {1, 1};
  }
  if (dimension == 2) {
    return {1, 0};
  }
  bad_input("--partition is required for covariances larger than 4x4");
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s += (i ? ";" : "") + format_number(xs[i]);
  }
  return s;
}

Table gaussian(const RunConfig& c) {
  const auto path = param(c.parameters, "cov", std::string());
  if (path.empty()) {
    bad_input("--cov is required");
  }
  const auto input = read_covariance(path);
  const auto partition = partition_param(c.parameters, input.partition, static_cast<int>(input.v.rows()));
  const auto cov = CovarianceModel::from_v(input.v, partition);

  const int d = partition.dimension();
  const double det_c = cov.det_c();
  const double det_shifted = (cov.v() + 0.5 * Matrix::Identity(d, d)).determinant();
  const auto nu = symplectic_eigenvalues(cov.v(), partition);
  const double joint = wehrl_gaussian_joint(cov);

  Table t;
  t.command = c.command;
  t.columns = {"modes_a", "modes_b", "admissible", "symplectic_eigenvalues", "wehrl_joint", "wehrl_local_a",
               "wehrl_local_b", "conditional", "mutual", "det_c", "det_v_plus_half", "det_c_bound_holds", "ppt",
               "wehrl_numeric", "cross_check_delta"};
  Cell local_a, local_b, conditional, mutual;
  std::string ppt = "n/a";
  if (partition.bipartite()) {
    local_a = wehrl_gaussian_local(cov, Subsystem::a);
    local_b = wehrl_gaussian_local(cov, Subsystem::b);
    const auto w = gaussian_witness(cov);
    conditional = w.conditional;
    mutual = w.mutual;
    if (partition == ModePartition{1, 1}) {
      ppt = ppt_test(cov.v(), partition).separable ? "separable" : "entangled";
    }
  }
  // Tensor quadrature is exhaustive in the dimension; cross-check up to two modes.
  Cell numeric, delta;
  if (partition.total() <= 2) {
    const double q = entropy_functional(gaussian_husimi(cov), outer_spec(c)).value;
    numeric = q;
    delta = std::abs(q - joint);
  }
  t.add_row({static_cast<long long>(partition.n_a), static_cast<long long>(partition.n_b), true, join(nu), joint,
             local_a, local_b, conditional, mutual, det_c, det_shifted, det_c <= 1.0 + 1e-10, ppt, numeric, delta});
  return t;
}

ValidatedState state_param(const ojson& p) {
  if (p.contains("cov")) {
    const auto input = read_covariance(param(p, "cov", std::string()));
    const auto partition = partition_param(p, input.partition, static_cast<int>(input.v.rows()));
    return gaussian_state(input.v, partition);
  }
  if (!p.contains("state")) {
    bad_input("no state given (use --fock, --mixture, --thermal, --tmss, --noon or --cov)");
  }
  return validate(state_from_json(p.at("state")));
}

Table state_report(const RunConfig& c) {
  const auto state = state_param(c.parameters);
  const auto r = entropy_report(state, outer_spec(c));
  Table t;
  t.command = c.command;
  t.columns = {"kind", "modes", "wehrl", "wehrl_method", "wehrl_lieb_slack", "differential_x", "differential_p",
               "von_neumann", "cross_check_delta"};
  t.add_row({kind_name(r.state), static_cast<long long>(r.modes), r.wehrl, to_string(r.wehrl_method),
             r.wehrl - r.modes, cell(r.differential_x), cell(r.differential_p), cell(r.von_neumann),
             cell(r.cross_check_delta)});
  t.meta["state"] = state_to_json(r.state);
  return t;
}

std::vector<FockWeight> parse_mixture(const std::string& text) {
  std::vector<FockWeight> weights;
  std::istringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      bad_input("mixture entries take the form n:q");
    }
    try {
      weights.push_back({std::stoi(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      bad_input("mixture entry '" + item + "' is not of the form n:q");
    }
  }
  return weights;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::istringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      bad_input("'" + item + "' is not a number");
    }
  }
  return values;
}

int default_parallelism() {
  if (const char* env = std::getenv(parallelism_env)) {
    try {
      const int p = std::stoi(env);
      if (p > 0) {
        return p;
      }
    } catch (const std::exception&) {
    }
    bad_input(std::string(parallelism_env) + " must be a positive integer");
  }
  return 1;
}

RunConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    bad_input("cannot open config file '" + path + "'");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    bad_input(std::string("config file is not valid JSON: ") + e.what());
  }
  return run_config_from_json(j);
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"eur-fock",       "eur-mixture",    "eur-thermal", "bipartite-tmss",
                                              "bipartite-noon", "gaussian",       "state"};
  return names;
}

ojson to_json(const RunConfig& config) {
  ojson j;
  j["command"] = config.command;
  j["parameters"] = config.parameters;
  j["quadrature"] = quadrature_to_json(config.quadrature);
  j["output"] = config.output ? ojson(*config.output) : ojson(nullptr);
  j["format"] = to_string(config.format);
  j["parallelism"] = config.parallelism;
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    bad_input("config must be a JSON object");
  }
  RunConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "command") {
        c.command = value.get<std::string>();
      } else if (key == "parameters") {
        if (!value.is_object()) {
          bad_input("parameters must be a JSON object");
        }
        c.parameters = ojson::parse(value.dump());
      } else if (key == "quadrature") {
        c.quadrature = quadrature_from_json(value, c.quadrature);
      } else if (key == "output") {
        if (!value.is_null()) {
          c.output = value.get<std::string>();
        }
      } else if (key == "format") {
        c.format = parse_format(value.get<std::string>());
      } else if (key == "parallelism") {
        c.parallelism = value.get<int>();
      } else {
        bad_input("unknown config field '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    bad_input(std::string("malformed config: ") + e.what());
  }
  if (c.parallelism < 1) {
    bad_input("parallelism must be positive");
  }
  return c;
}

Table execute(const RunConfig& config) {
  config.quadrature.validate();
  if (config.parallelism < 1) {
    bad_input("parallelism must be positive");
  }
  const auto& cmd = config.command;
  if (cmd == "eur-fock") return eur_fock(config);
  if (cmd == "eur-mixture") return eur_mixture(config);
  if (cmd == "eur-thermal") return eur_thermal(config);
  if (cmd == "bipartite-tmss") return bipartite_tmss(config);
  if (cmd == "bipartite-noon") return bipartite_noon(config);
  if (cmd == "gaussian") return gaussian(config);
  if (cmd == "state") return state_report(config);
  bad_input(cmd.empty() ? "no command given" : "unknown command '" + cmd + "'");
}

RunConfig parse_arguments(const std::vector<std::string>& args) {
  CLI::App app{"Phase-space entropies, uncertainty relations and Wehrl entanglement witnesses", "wehrl_cli"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path, format, output, strategy;
  int parallelism = 1, radial_nodes = 0, angular_nodes = 0, cartesian_nodes = 0, max_escalations = 0;
  double radial_cutoff = 0.0, abs_tol = 0.0, rel_tol = 0.0;

  auto* o_config = app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* o_format = app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  auto* o_output = app.add_option("--output,-o", output, "Output file (default: stdout)");
  auto* o_par = app.add_option("--parallelism,-j", parallelism, "Worker threads")->check(CLI::PositiveNumber);
  auto* o_strategy = app.add_option("--strategy", strategy, "Quadrature strategy")
                         ->check(CLI::IsMember({"auto", "radial-1d", "polar-2d", "polar-reduced-3d",
                                                "tensor-cartesian"}));
  auto* o_radial = app.add_option("--radial-nodes", radial_nodes)->check(CLI::PositiveNumber);
  auto* o_angular = app.add_option("--angular-nodes", angular_nodes)->check(CLI::PositiveNumber);
  auto* o_cart = app.add_option("--cartesian-nodes", cartesian_nodes)->check(CLI::PositiveNumber);
  auto* o_cutoff = app.add_option("--radial-cutoff", radial_cutoff)->check(CLI::PositiveNumber);
  auto* o_abs = app.add_option("--abs-tol", abs_tol)->check(CLI::PositiveNumber);
  auto* o_rel = app.add_option("--rel-tol", rel_tol)->check(CLI::PositiveNumber);
  auto* o_esc = app.add_option("--max-escalations", max_escalations)->check(CLI::NonNegativeNumber);

  int fock_n_max = 0;
  bool asymptotics = false;
  auto* fock = app.add_subcommand("eur-fock", "Uncertainty relations for Fock states n = 0..n_max");
  auto* o_fock_n = fock->add_option("--n-max", fock_n_max, "Largest Fock index (<= 50)");
  auto* o_asym = fock->add_flag("--asymptotics", asymptotics, "Add large-n columns");

  int steps = 0;
  auto* mixture = app.add_subcommand("eur-mixture", "Uncertainty relations for q|0><0| + (1-q)|1><1|");
  auto* o_steps = mixture->add_option("--steps", steps, "Number of q values")->check(CLI::Range(2, 100000));

  double beta_min = 0.0, beta_max = 0.0;
  int points = 0;
  auto* thermal = app.add_subcommand("eur-thermal", "Uncertainty relations for thermal states");
  auto* o_bmin = thermal->add_option("--beta-min", beta_min)->check(CLI::PositiveNumber);
  auto* o_bmax = thermal->add_option("--beta-max", beta_max)->check(CLI::PositiveNumber);
  auto* o_points = thermal->add_option("--points", points)->check(CLI::PositiveNumber);

  std::string lambda_grid;
  auto* tmss = app.add_subcommand("bipartite-tmss", "Wehrl mutual information of two-mode squeezed states");
  auto* o_grid = tmss->add_option("--lambda-grid", lambda_grid, "Comma-separated lambda values");

  int noon_n_max = 0;
  auto* noon = app.add_subcommand("bipartite-noon", "Wehrl mutual information of N00N states");
  auto* o_noon_n = noon->add_option("--n-max", noon_n_max, "Largest excitation (<= 10)");

  std::string cov_path;
  std::vector<int> partition;
  auto* gauss = app.add_subcommand("gaussian", "Report on a Gaussian covariance matrix");
  auto* o_cov = gauss->add_option("--cov", cov_path, "Covariance file (JSON or CSV)");
  auto* o_part = gauss->add_option("--partition", partition, "Modes N M")->expected(2);

  int s_fock = 0, s_noon = 0;
  double s_thermal = 0.0, s_tmss = 0.0;
  std::string s_mixture, s_cov;
  std::vector<int> s_partition;
  auto* state = app.add_subcommand("state", "Entropy report for a single state");
  auto* g_state = state->add_option_group("state")->require_option(0, 1);
  auto* o_sf = g_state->add_option("--fock", s_fock, "Fock state |n>");
  auto* o_sm = g_state->add_option("--mixture", s_mixture, "Fock mixture n:q,n:q,...");
  auto* o_st = g_state->add_option("--thermal", s_thermal, "Thermal state beta*omega");
  auto* o_ss = g_state->add_option("--tmss", s_tmss, "Two-mode squeezed state lambda");
  auto* o_sn = g_state->add_option("--noon", s_noon, "N00N state excitation");
  auto* o_sc = g_state->add_option("--cov", s_cov, "Gaussian covariance file");
  auto* o_sp = state->add_option("--partition", s_partition, "Modes N M for --cov")->expected(2);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  }

  RunConfig c;
  c.parallelism = default_parallelism();
  if (*o_config) {
    c = load_config(config_path);
  }
  if (*o_format) c.format = parse_format(format);
  if (*o_output) c.output = output;
  if (*o_par) c.parallelism = parallelism;
  if (*o_strategy) c.quadrature.strategy = parse_strategy(strategy);
  if (*o_radial) c.quadrature.radial_nodes = radial_nodes;
  if (*o_angular) c.quadrature.angular_nodes = angular_nodes;
  if (*o_cart) c.quadrature.cartesian_nodes_per_dim = cartesian_nodes;
  if (*o_cutoff) c.quadrature.radial_cutoff = radial_cutoff;
  if (*o_abs) c.quadrature.abs_tol = abs_tol;
  if (*o_rel) c.quadrature.rel_tol = rel_tol;
  if (*o_esc) c.quadrature.max_escalations = max_escalations;

  const auto chosen = app.get_subcommands();
  if (!chosen.empty()) {
    const std::string name = chosen.front()->get_name();
    if (name != c.command) {
      c.parameters = ojson::object();
    }
    c.command = name;
  }
  auto& p = c.parameters;
  if (*o_fock_n) p["n_max"] = fock_n_max;
  if (*o_asym) p["asymptotics"] = asymptotics;
  if (*o_steps) p["steps"] = steps;
  if (*o_bmin) p["beta_min"] = beta_min;
  if (*o_bmax) p["beta_max"] = beta_max;
  if (*o_points) p["points"] = points;
  if (*o_grid) p["lambda_grid"] = parse_list(lambda_grid);
  if (*o_noon_n) p["n_max"] = noon_n_max;
  if (*o_cov) p["cov"] = cov_path;
  if (*o_part) p["partition"] = partition;
  if (*o_sf) p["state"] = state_to_json(Fock{s_fock});
  if (*o_sm) p["state"] = state_to_json(FockMixture{parse_mixture(s_mixture)});
  if (*o_st) p["state"] = state_to_json(Thermal{s_thermal});
  if (*o_ss) p["state"] = state_to_json(TwoModeSqueezed{s_tmss});
  if (*o_sn) p["state"] = state_to_json(Noon{s_noon});
  if (*o_sc) p["cov"] = s_cov;
  if (*o_sp) p["partition"] = s_partition;

  if (c.command.empty()) {
    bad_input("no command given; choose one of eur-fock, eur-mixture, eur-thermal, bipartite-tmss, "
              "bipartite-noon, gaussian, state");
  }
  return c;
}

namespace {

int emit(const Table& table, const RunConfig& config, std::ostream& out) {
  if (config.output) {
    std::ofstream file(*config.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      bad_input("cannot write output file '" + *config.output + "'");
    }
    write_table(table, config.format, file);
  } else {
    write_table(table, config.format, out);
  }
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_arguments(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return exit_ok;
    }
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  }

  try {
    return emit(execute(config), config, out);
  } catch (const CheckFailed& f) {
    emit(f.table, config, out);
    err << "error: " << f.message << '\n';
    return exit_numeric;
  } catch (const InadmissibleCovariance& e) {
    err << "error: " << e.what() << "\nviolating eigenvalue: " << format_number(e.violating_eigenvalue())
        << '\n';
    return exit_invalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool numeric = e.code() == ErrorCode::tolerance_not_reached || e.code() == ErrorCode::support_violation;
    return numeric ? exit_numeric : exit_invalid;
  }
}

}  // namespace wehrl::cli
