#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wehrl/cli.hpp"
#include "wehrl/error.hpp"

using namespace wehrl;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const auto r = run_cli(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return json::parse(r.out);
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "wehrl_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

double num(const json& v) { return v.get<double>(); }

}  // namespace

TEST_CASE("eur-fock reproduces the low-n values") {
  const auto j = run_json({"eur-fock", "--n-max", "2"});
  CHECK(j["command"] == "eur-fock");
  const auto& rows = j["rows"];
  REQUIRE(rows.size() == 3);
  CHECK(num(rows[1]["wl_lhs"]) == doctest::Approx(2.72).epsilon(0.002));
  CHECK(num(rows[1]["bbm_lhs"]) == doctest::Approx(2.69).epsilon(0.004));
  CHECK(num(rows[2]["wl_lhs"]) == doctest::Approx(2.992).epsilon(0.0004));
  CHECK(num(rows[2]["bbm_lhs"]) == doctest::Approx(2.997).epsilon(0.0004));
  for (const auto& r : rows) {
    CHECK(num(r["cross_check_delta"]) < 1e-5);
  }
  const auto single = run_json({"eur-fock", "--n-max", "0"});
  REQUIRE(single["rows"].size() == 1);
  CHECK(std::abs(num(single["rows"][0]["wl_deficit"])) < 1e-9);
  CHECK(std::abs(num(single["rows"][0]["bbm_deficit"])) < 1e-9);
}

TEST_CASE("eur-fock asymptotic columns") {
  const auto j = run_json({"eur-fock", "--asymptotics"});
  REQUIRE(j["rows"].size() == 51);
  for (int n = 20; n <= 50; ++n) {
    const auto& r = j["rows"][n];
    CHECK(std::abs(num(r["wl_asymptotic"]) - num(r["wl_lhs"])) < 0.05);
    CHECK(num(r["bbm_asymptotic"]) < num(r["bbm_lhs"]));
  }
  CHECK(j["rows"][0]["wl_asymptotic"].is_null());
}

TEST_CASE("eur-mixture endpoints and crossover") {
  const auto j = run_json({"eur-mixture", "--steps", "3"});
  const auto fock = run_json({"eur-fock", "--n-max", "1"});
  REQUIRE(j["rows"].size() == 3);
  CHECK(num(j["rows"][0]["wl_lhs"]) == doctest::Approx(num(fock["rows"][1]["wl_lhs"])));
  CHECK(num(j["rows"][2]["wl_lhs"]) == doctest::Approx(num(fock["rows"][0]["wl_lhs"])));
  CHECK(num(j["rows"][0]["wl_lhs"]) > num(j["rows"][1]["wl_lhs"]));
  CHECK(num(j["rows"][1]["wl_lhs"]) > num(j["rows"][2]["wl_lhs"]));
  const double q = num(j["meta"]["crossover_q"]);
  CHECK(q > 0.0);
  CHECK(q < 0.1);
}

TEST_CASE("eur-thermal grid") {
  const auto j = run_json({"eur-thermal", "--beta-min", "0.5", "--beta-max", "2", "--points", "3"});
  REQUIRE(j["rows"].size() == 3);
  CHECK(num(j["rows"][1]["grid_param"]) == doctest::Approx(1.0));
  CHECK(num(j["rows"][1]["wl_lhs"]) == doctest::Approx(2.6033).epsilon(1e-4));
  CHECK(run_json({"eur-thermal"})["rows"].size() == 60);
  CHECK(run_cli({"eur-thermal", "--beta-min", "-1"}).code == cli::exit_invalid);
}

TEST_CASE("bipartite-tmss") {
  const auto j = run_json({"bipartite-tmss", "--lambda-grid", "0,0.6"});
  REQUIRE(j["rows"].size() == 2);
  const auto& zero = j["rows"][0];
  CHECK(std::abs(num(zero["iw_numeric"])) < 1e-9);
  CHECK(num(zero["conditional_numeric"]) == doctest::Approx(1.0));
  CHECK(num(zero["quantum_mi"]) == 0.0);
  const auto& r = j["rows"][1];
  CHECK(num(r["iw_numeric"]) == doctest::Approx(0.4463).epsilon(1e-4));
  CHECK(num(r["quantum_mi"]) >= num(r["iw_numeric"]));
  CHECK(r["bound_holds"] == true);
  CHECK(num(r["cross_check_delta"]) < 1e-5);
  CHECK(run_cli({"bipartite-tmss", "--lambda-grid", "0.2,1.0"}).code == cli::exit_invalid);
  CHECK(run_cli({"bipartite-tmss", "--lambda-grid", "0.2,abc"}).code == cli::exit_invalid);
}

TEST_CASE("bipartite-noon") {
  const auto j = run_json({"bipartite-noon", "--n-max", "1"});
  REQUIRE(j["rows"].size() == 2);
  CHECK(std::abs(num(j["rows"][0]["iw"])) < 1e-6);
  CHECK(num(j["rows"][1]["iw"]) <= 2.0 * std::log(2.0));
  CHECK(num(j["rows"][1]["conditional"]) >= 1.0);
  CHECK(run_cli({"bipartite-noon", "--n-max", "11"}).code == cli::exit_invalid);
}

TEST_CASE("gaussian report") {
  const auto vac = write_file("vac.json", "[[0.5,0,0,0],[0,0.5,0,0],[0,0,0.5,0],[0,0,0,0.5]]");
  const auto j = run_json({"gaussian", "--cov", vac.string(), "--partition", "1", "1"});
  const auto& r = j["rows"][0];
  CHECK(num(r["wehrl_joint"]) == doctest::Approx(2.0));
  CHECK(std::abs(num(r["mutual"])) < 1e-12);
  CHECK(r["ppt"] == "separable");

  const double l = 0.5, a = 0.5 * (1 + l * l) / (1 - l * l), c = l / (1 - l * l);
  std::ostringstream csv;
  csv.precision(17);
  csv << a << ",0," << -c << ",0\n0," << a << ",0," << c << "\n" << -c << ",0," << a << ",0\n0," << c << ",0," << a
      << "\n";
  const auto tmss = write_file("tmss.csv", csv.str());
  const auto t = run_json({"gaussian", "--cov", tmss.string()});
  CHECK(num(t["rows"][0]["mutual"]) == doctest::Approx(0.2877).epsilon(1e-4));
  CHECK(t["rows"][0]["ppt"] == "entangled");
  CHECK(num(t["rows"][0]["cross_check_delta"]) < 1e-5);

  const auto bad = write_file("bad.json", "[[0.5, 0], [0, 0.5");
  CHECK(run_cli({"gaussian", "--cov", bad.string()}).code == cli::exit_invalid);
  const auto ragged = write_file("ragged.json", "[[0.5, 0], [0]]");
  CHECK(run_cli({"gaussian", "--cov", ragged.string()}).code == cli::exit_invalid);
  const auto low = write_file("low.json", "[[0.2, 0], [0, 0.5]]");
  const auto r_low = run_cli({"gaussian", "--cov", low.string()});
  CHECK(r_low.code == cli::exit_invalid);
  CHECK(r_low.err.find("violating") != std::string::npos);
  CHECK(run_cli({"gaussian"}).code == cli::exit_invalid);
}

TEST_CASE("state report") {
  const auto j = run_json({"state", "--fock", "1"});
  CHECK(num(j["rows"][0]["wehrl"]) == doctest::Approx(1.5772156649));
  CHECK(j["rows"][0]["wehrl_method"] == "both");
  const auto m = run_json({"state", "--mixture", "0:0.5,1:0.5"});
  CHECK(num(m["rows"][0]["von_neumann"]) == doctest::Approx(std::log(2.0)));
  CHECK(run_cli({"state", "--mixture", "0:0.6,1:0.5"}).code == cli::exit_invalid);
  CHECK(run_cli({"state", "--fock", "1", "--thermal", "2"}).code == cli::exit_invalid);
  CHECK(run_cli({"state", "--tmss", "1"}).code == cli::exit_invalid);
  CHECK(run_cli({"state"}).code == cli::exit_invalid);
}

TEST_CASE("exit status on numeric failure") {
  const auto r = run_cli({"--strategy", "tensor-cartesian", "--max-escalations", "0", "state", "--fock", "1"});
  CHECK(r.code == cli::exit_numeric);
  CHECK(r.err.find("ToleranceNotReached") != std::string::npos);
  const auto sweep = run_cli({"--strategy", "tensor-cartesian", "--max-escalations", "0", "eur-fock", "--n-max", "2"});
  CHECK(sweep.code == cli::exit_numeric);
  CHECK(sweep.err.find("n = 1") != std::string::npos);
}

TEST_CASE("invalid invocations") {
  CHECK(run_cli({}).code == cli::exit_invalid);
  CHECK(run_cli({"frobnicate"}).code == cli::exit_invalid);
  CHECK(run_cli({"--format", "xml", "eur-fock"}).code == cli::exit_invalid);
  CHECK(run_cli({"--parallelism", "0", "eur-fock"}).code == cli::exit_invalid);
  CHECK(run_cli({"--abs-tol", "-1", "eur-fock"}).code == cli::exit_invalid);
  CHECK(run_cli({"eur-fock", "--n-max", "51"}).code == cli::exit_invalid);
  const auto help = run_cli({"--help"});
  CHECK(help.code == cli::exit_ok);
  CHECK(help.out.find("eur-fock") != std::string::npos);
  CHECK(run_cli({"gaussian", "--help"}).out.find("--cov") != std::string::npos);
}

TEST_CASE("csv output") {
  const auto r = run_cli({"eur-fock", "--n-max", "1"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, row0;
  std::getline(lines, header);
  std::getline(lines, row0);
  CHECK(header.rfind("grid_param,wl_lhs,bbm_lhs,fl_lhs,bound,wl_deficit,bbm_deficit,fl_deficit", 0) == 0);
  CHECK(row0.rfind("0,2.14472988585,", 0) == 0);
}

TEST_CASE("json output re-parses to the computed values") {
  cli::RunConfig config;
  config.command = "eur-thermal";
  config.parameters = {{"points", 7}};
  const auto table = cli::execute(config);
  std::ostringstream out;
  write_json(table, out);
  const auto j = json::parse(out.str());
  REQUIRE(j["rows"].size() == table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (const auto* d = std::get_if<double>(&table.rows[i][c])) {
        CHECK(num(j["rows"][i][table.columns[c]]) == *d);
      }
    }
  }
}

TEST_CASE("output files are byte-identical across runs") {
  const auto a = scratch("a.csv");
  const auto b = scratch("b.csv");
  const auto c = scratch("c.json");
  const auto d = scratch("d.json");
  REQUIRE(run_cli({"-o", a.string(), "eur-mixture", "--steps", "11"}).code == 0);
  REQUIRE(run_cli({"-o", b.string(), "eur-mixture", "--steps", "11"}).code == 0);
  CHECK(slurp(a) == slurp(b));
  REQUIRE(run_cli({"-j", "3", "--format", "json", "-o", c.string(), "bipartite-tmss"}).code == 0);
  REQUIRE(run_cli({"-j", "3", "--format", "json", "-o", d.string(), "bipartite-tmss"}).code == 0);
  CHECK(slurp(c) == slurp(d));
  CHECK_FALSE(slurp(c).empty());
}

TEST_CASE("config files and flag precedence") {
  cli::RunConfig base;
  base.command = "eur-fock";
  base.parameters = {{"n_max", 4}};
  base.format = Format::json;
  base.quadrature.radial_nodes = 200;
  base.parallelism = 2;
  const auto round = cli::run_config_from_json(json::parse(cli::to_json(base).dump()));
  CHECK(round.command == "eur-fock");
  CHECK(round.parameters["n_max"] == 4);
  CHECK(round.format == Format::json);
  CHECK(round.quadrature.radial_nodes == 200);
  CHECK(round.parallelism == 2);
  CHECK_FALSE(round.output.has_value());

  const auto path = write_file("config.json", cli::to_json(base).dump());
  const auto from_file = cli::parse_arguments({"--config", path.string()});
  CHECK(from_file.parameters["n_max"] == 4);
  const auto overridden = cli::parse_arguments({"--config", path.string(), "--format", "csv", "eur-fock", "--n-max", "1"});
  CHECK(overridden.format == Format::csv);
  CHECK(overridden.parameters["n_max"] == 1);
  CHECK(overridden.quadrature.radial_nodes == 200);
  const auto other = cli::parse_arguments({"--config", path.string(), "eur-mixture"});
  CHECK(other.command == "eur-mixture");
  CHECK_FALSE(other.parameters.contains("n_max"));

  const auto r = run_cli({"--config", path.string()});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["rows"].size() == 5);

  const auto junk = write_file("junk.json", R"({"command": "eur-fock", "colour": "red"})");
  CHECK(run_cli({"--config", junk.string()}).code == cli::exit_invalid);
}

TEST_CASE("parallelism from the environment") {
  ::setenv(cli::parallelism_env, "3", 1);
  CHECK(cli::parse_arguments({"eur-fock"}).parallelism == 3);
  CHECK(cli::parse_arguments({"-j", "2", "eur-fock"}).parallelism == 2);
  ::setenv(cli::parallelism_env, "many", 1);
  CHECK(run_cli({"eur-fock"}).code == cli::exit_invalid);
  ::unsetenv(cli::parallelism_env);
  CHECK(cli::parse_arguments({"eur-fock"}).parallelism == 1);
}
