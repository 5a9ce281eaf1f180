#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wehrl/cli.hpp"
#include "wehrl/entropies.hpp"
#include "wehrl/error.hpp"
#include "wehrl/eur.hpp"
#include "wehrl/gaussian.hpp"
#include "wehrl/husimi.hpp"
#include "wehrl/io.hpp"
#include "wehrl/quadrature.hpp"
#include "wehrl/state.hpp"

namespace py = pybind11;
using namespace wehrl;

namespace {

py::object to_python(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

ModePartition partition_from(std::pair<int, int> p) { return {p.first, p.second}; }

py::dict integral_dict(const IntegralResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["error_estimate"] = r.error_estimate;
  d["nodes_used"] = r.nodes_used;
  d["strategy"] = to_string(r.strategy);
  d["escalations"] = r.escalations;
  return d;
}

py::dict bipartite_dict(const BipartiteResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["error_estimate"] = r.error_estimate;
  d["cross_check"] = r.cross_check;
  d["closed_form"] = r.closed_form ? py::cast(*r.closed_form) : py::none();
  return d;
}

QuadratureSpec spec_or_default(const std::optional<QuadratureSpec>& spec) { return spec.value_or(QuadratureSpec{}); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wehrl entropies, entropic uncertainty relations and Gaussian phase-space tools";

  static py::exception<Error> error_type(m, "WehrlError", PyExc_ValueError);
  static py::exception<InadmissibleCovariance> inadmissible_type(m, "InadmissibleCovarianceError", error_type.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InadmissibleCovariance& e) {
      py::object exc = py::handle(inadmissible_type.ptr())(e.what());
      exc.attr("code") = to_string(e.code());
      exc.attr("violating_eigenvalue") = e.violating_eigenvalue();
      PyErr_SetObject(inadmissible_type.ptr(), exc.ptr());
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(e.what());
      exc.attr("code") = to_string(e.code());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init<>())
      .def_property(
          "strategy",
          [](const QuadratureSpec& s) -> std::optional<std::string> {
            if (!s.strategy) return std::nullopt;
            return to_string(*s.strategy);
          },
          [](QuadratureSpec& s, std::optional<std::string> name) {
            if (!name) {
              s.strategy.reset();
              return;
            }
            auto parsed = parse_strategy(*name);
            if (!parsed) throw Error(ErrorCode::invalid_parameter, "unknown strategy '" + *name + "'");
            s.strategy = parsed;
          })
      .def_readwrite("radial_nodes", &QuadratureSpec::radial_nodes)
      .def_readwrite("angular_nodes", &QuadratureSpec::angular_nodes)
      .def_readwrite("cartesian_nodes_per_dim", &QuadratureSpec::cartesian_nodes_per_dim)
      .def_readwrite("radial_cutoff", &QuadratureSpec::radial_cutoff)
      .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
      .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
      .def_readwrite("parallelism", &QuadratureSpec::parallelism)
      .def_readwrite("max_escalations", &QuadratureSpec::max_escalations)
      .def("validate", &QuadratureSpec::validate);

  py::class_<ValidatedState>(m, "State")
      .def_property_readonly("kind", [](const ValidatedState& s) { return kind_name(s.spec()); })
      .def_property_readonly("partition",
                             [](const ValidatedState& s) { return std::make_pair(s.partition().n_a, s.partition().n_b); })
      .def_property_readonly("modes", [](const ValidatedState& s) { return s.partition().total(); })
      .def("to_dict", [](const ValidatedState& s) { return to_python(state_to_json(s.spec())); })
      .def("__repr__", [](const ValidatedState& s) { return "State(" + state_to_json(s.spec()).dump() + ")"; });

  m.def("fock", &fock_state, py::arg("n"));
  m.def(
      "fock_mixture",
      [](const std::vector<std::pair<int, double>>& weights) {
        std::vector<FockWeight> w;
        for (auto [n, q] : weights) w.push_back({n, q});
        return fock_mixture_state(std::move(w));
      },
      py::arg("weights"));
  m.def("mixture01", &mixture01_state, py::arg("q"));
  m.def("thermal", &thermal_state, py::arg("beta_omega"));
  m.def(
      "gaussian",
      [](const Matrix& v, std::pair<int, int> partition) { return gaussian_state(v, partition_from(partition)); },
      py::arg("v"), py::arg("partition") = std::make_pair(1, 0));
  m.def("tmss", &tmss_state, py::arg("lam"));
  m.def("noon", &noon_state, py::arg("n"));
  m.def("state_from_dict", [](const py::object& d) {
    const std::string text = py::module_::import("json").attr("dumps")(d).cast<std::string>();
    return validate(state_from_json(nlohmann::json::parse(text)));
  });

  m.def(
      "husimi",
      [](const ValidatedState& s, const std::vector<double>& r) {
        if (static_cast<int>(r.size()) != 2 * s.partition().total()) {
          throw Error(ErrorCode::dimension_mismatch, "point needs 2 coordinates per mode");
        }
        return make_husimi(s)(r);
      },
      py::arg("state"), py::arg("r"));

  m.def(
      "wehrl_entropy",
      [](const ValidatedState& s, std::optional<QuadratureSpec> spec) {
        return integral_dict(entropy_functional(make_husimi(s), spec_or_default(spec)));
      },
      py::arg("state"), py::arg("spec") = py::none());
  m.def("wehrl_closed_form", &wehrl_closed_form, py::arg("state"));
  m.def(
      "entropy_report",
      [](const ValidatedState& s, std::optional<QuadratureSpec> spec) {
        return to_python(to_json(entropy_report(s, spec_or_default(spec))));
      },
      py::arg("state"), py::arg("spec") = py::none());
  m.def(
      "relative_entropy",
      [](const ValidatedState& rho, const ValidatedState& sigma, std::optional<QuadratureSpec> spec) {
        const auto r = wehrl_relative_entropy(make_husimi(rho), make_husimi(sigma), spec_or_default(spec));
        py::dict d;
        d["value"] = r.value;
        d["error_estimate"] = r.error_estimate;
        d["support_violation"] = r.support_violation;
        return d;
      },
      py::arg("rho"), py::arg("sigma"), py::arg("spec") = py::none());
  m.def(
      "mutual_information",
      [](const ValidatedState& s, std::optional<QuadratureSpec> spec) {
        return bipartite_dict(wehrl_mutual_information(s, spec_or_default(spec)));
      },
      py::arg("state"), py::arg("spec") = py::none());
  m.def(
      "conditional_entropy",
      [](const ValidatedState& s, std::optional<QuadratureSpec> spec) {
        return bipartite_dict(wehrl_conditional_entropy(s, spec_or_default(spec)));
      },
      py::arg("state"), py::arg("spec") = py::none());
  m.def("von_neumann", &von_neumann, py::arg("state"));

  m.def("wehrl_fock_closed", &wehrl_fock_closed, py::arg("n"));
  m.def("wehrl_thermal_closed", &wehrl_thermal_closed, py::arg("beta_omega"));
  m.def("eur_bound", &eur_bound);

  m.def(
      "eur_report",
      [](const ValidatedState& s, std::optional<QuadratureSpec> spec) {
        return to_python(to_json(eur_report(s, spec_or_default(spec))));
      },
      py::arg("state"), py::arg("spec") = py::none());
  m.def(
      "eur_sweep",
      [](const std::string& family, int n_max, int steps, double beta_min, double beta_max, int points,
         bool asymptotics, std::optional<QuadratureSpec> spec) {
        SweepSpec sweep;
        if (family == "fock") {
          sweep.family = SweepFamily::fock;
        } else if (family == "mixture") {
          sweep.family = SweepFamily::mixture01;
        } else if (family == "thermal") {
          sweep.family = SweepFamily::thermal;
        } else {
          throw Error(ErrorCode::invalid_parameter, "family must be fock, mixture or thermal");
        }
        sweep.n_max = n_max;
        sweep.steps = steps;
        sweep.beta_min = beta_min;
        sweep.beta_max = beta_max;
        sweep.points = points;
        sweep.asymptotics = asymptotics;
        py::list rows;
        for (const auto& r : eur_sweep(sweep, spec_or_default(spec))) rows.append(to_python(to_json(r)));
        return rows;
      },
      py::arg("family"), py::arg("n_max") = 50, py::arg("steps") = 51, py::arg("beta_min") = 0.05,
      py::arg("beta_max") = 20.0, py::arg("points") = 60, py::arg("asymptotics") = false,
      py::arg("spec") = py::none());
  m.def(
      "mixture_crossover", [](std::optional<QuadratureSpec> spec) { return mixture_crossover(spec_or_default(spec)); },
      py::arg("spec") = py::none());

  m.def("tmss_covariance", &tmss_covariance, py::arg("lam"));
  m.def(
      "squeeze_mode",
      [](const Matrix& v, std::pair<int, int> partition, int mode, double kappa) {
        return squeeze_mode(v, partition_from(partition), mode, kappa);
      },
      py::arg("v"), py::arg("partition"), py::arg("mode"), py::arg("kappa"));
  m.def(
      "symplectic_eigenvalues",
      [](const Matrix& v, std::pair<int, int> partition) { return symplectic_eigenvalues(v, partition_from(partition)); },
      py::arg("v"), py::arg("partition"));
  m.def(
      "gaussian_summary",
      [](const Matrix& v, std::pair<int, int> partition) {
        const auto cov = CovarianceModel::from_v(v, partition_from(partition));
        py::dict d;
        d["c"] = Matrix(cov.c());
        d["det_c"] = cov.det_c();
        d["wehrl_joint"] = wehrl_gaussian_joint(cov);
        d["von_neumann"] = gaussian_von_neumann(v, partition_from(partition));
        if (partition.second > 0) {
          const auto w = gaussian_witness(cov);
          d["wehrl_local_a"] = wehrl_gaussian_local(cov, Subsystem::a);
          d["wehrl_local_b"] = wehrl_gaussian_local(cov, Subsystem::b);
          d["conditional"] = w.conditional;
          d["mutual"] = w.mutual;
          d["quantum_mutual"] = gaussian_quantum_mutual_information(cov);
          d["ppt"] = ppt_test(v, partition_from(partition)).separable;
        }
        return d;
      },
      py::arg("v"), py::arg("partition"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
