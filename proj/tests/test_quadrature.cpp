#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wehrl/constants.hpp"
#include "wehrl/entropies.hpp"
#include "wehrl/error.hpp"
#include "wehrl/husimi.hpp"
#include "wehrl/quadrature.hpp"

using namespace wehrl;

namespace {

QuadratureSpec with(Strategy s) {
  QuadratureSpec spec;
  spec.strategy = s;
  return spec;
}

}  // namespace

TEST_CASE("strategy names round-trip") {
  for (auto s : {Strategy::radial_1d, Strategy::polar_2d, Strategy::polar_reduced_3d, Strategy::tensor_cartesian}) {
    CHECK(parse_strategy(to_string(s)) == s);
  }
  CHECK_FALSE(parse_strategy("auto").has_value());
  CHECK_THROWS_AS(parse_strategy("simpson"), Error);
}

TEST_CASE("spec validation") {
  QuadratureSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.abs_tol = 0.0;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = {};
  spec.radial_nodes = -4;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = {};
  spec.max_escalations = -1;
  CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("automatic strategy selection") {
  const QuadratureSpec spec;
  CHECK(select_strategy(fock_husimi(3).function(), spec) == Strategy::radial_1d);
  CHECK(select_strategy(thermal_husimi(1.0).function(), spec) == Strategy::radial_1d);
  CHECK(select_strategy(noon_husimi(3).function(), spec) == Strategy::polar_reduced_3d);
  CHECK(select_strategy(gaussian_husimi(*tmss_state(0.4).covariance()).function(), spec) ==
        Strategy::tensor_cartesian);
}

TEST_CASE("vacuum density integrates to one under every strategy") {
  const auto q = fock_husimi(0);
  for (auto s : {Strategy::radial_1d, Strategy::polar_2d, Strategy::tensor_cartesian}) {
    CAPTURE(to_string(s));
    const auto r = integrate(q.function(), with(s));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.strategy == s);
    CHECK(r.nodes_used > 0);
    CHECK(std::isfinite(r.error_estimate));
  }
}

TEST_CASE("normalization of Fock 3 and of the 4D N00N distribution") {
  CHECK(integrate(fock_husimi(3).function()).value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(integrate(fock_husimi(50).function()).value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(integrate(noon_husimi(2).function()).value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(integrate(noon_husimi(2).function(), with(Strategy::tensor_cartesian)).value ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Wehrl entropy values") {
  CHECK(entropy_functional(fock_husimi(0)).value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(entropy_functional(fock_husimi(1)).value == doctest::Approx(1.0 + constants::euler_gamma).epsilon(1e-8));
  const double thermal = 1.0 + 0.5 + std::log(0.5 * std::numbers::pi / std::sinh(0.5)) - std::log(std::numbers::pi);
  CHECK(std::abs(entropy_functional(thermal_husimi(1.0)).value - thermal) < 1e-6);
}

TEST_CASE("relative entropy of TMSS against its marginals") {
  const auto q = gaussian_husimi(*tmss_state(0.5).covariance());
  const auto product = product_husimi(q.marginal(Subsystem::a), q.marginal(Subsystem::b));
  const auto r = wehrl_relative_entropy(q, product);
  CHECK(r.value == doctest::Approx(-std::log(0.75)).epsilon(1e-8));
}

TEST_CASE("doubling node counts stays within the error estimate") {
  const std::vector<HusimiEvaluator> qs{fock_husimi(5), thermal_husimi(0.4),
                                        fock_mixture_husimi({{0, 0.3}, {2, 0.7}})};
  for (const auto& q : qs) {
    QuadratureSpec base;
    QuadratureSpec doubled;
    doubled.radial_nodes *= 2;
    doubled.angular_nodes *= 2;
    const auto a = entropy_functional(q, base);
    const auto b = entropy_functional(q, doubled);
    CHECK(std::abs(a.value - b.value) <= a.error_estimate);
  }
  const auto g = gaussian_husimi(*tmss_state(0.6).covariance());
  QuadratureSpec doubled;
  doubled.cartesian_nodes_per_dim *= 2;
  const auto a = entropy_functional(g);
  const auto b = entropy_functional(g, doubled);
  CHECK(std::abs(a.value - b.value) <= a.error_estimate);
}

TEST_CASE("radial and tensor strategies agree for smooth rotation-invariant Q") {
  const std::vector<HusimiEvaluator> qs{fock_husimi(0), thermal_husimi(0.5), thermal_husimi(3.0),
                                        fock_mixture_husimi({{0, 0.5}, {1, 0.5}})};
  for (const auto& q : qs) {
    const auto radial = entropy_functional(q, with(Strategy::radial_1d));
    const auto tensor = entropy_functional(q, with(Strategy::tensor_cartesian));
    CHECK(std::abs(radial.value - tensor.value) <= radial.error_estimate + tensor.error_estimate + 1e-12);
  }
}

TEST_CASE("polar and radial strategies agree for Fock states") {
  for (int n : {1, 4, 10}) {
    const auto q = fock_husimi(n);
    const auto radial = entropy_functional(q, with(Strategy::radial_1d));
    const auto polar = entropy_functional(q, with(Strategy::polar_2d));
    CHECK(std::abs(radial.value - polar.value) < 1e-9);
  }
}

TEST_CASE("radial cutoff sensitivity") {
  for (int n : {0, 10, 40}) {
    QuadratureSpec wide;
    wide.radial_cutoff *= 1.25;
    const auto a = entropy_functional(fock_husimi(n));
    const auto b = entropy_functional(fock_husimi(n), wide);
    CHECK(std::abs(a.value - b.value) < QuadratureSpec{}.abs_tol);
  }
}

TEST_CASE("results are bitwise deterministic") {
  const auto g = gaussian_husimi(*tmss_state(0.4).covariance());
  QuadratureSpec spec;
  spec.parallelism = 3;
  const double first = entropy_functional(g, spec).value;
  CHECK(entropy_functional(g, spec).value == first);
  spec.parallelism = 1;
  CHECK(entropy_functional(g, spec).value == first);
  const auto n = noon_husimi(1);
  spec.parallelism = 2;
  const double polar = integrate(n.function(), spec).value;
  CHECK(integrate(n.function(), spec).value == polar);
}

TEST_CASE("escalation exhaustion raises ToleranceNotReached") {
  // ln u is singular at the origin, which a Gauss-Hermite product rule resolves slowly.
  QuadratureSpec spec = with(Strategy::tensor_cartesian);
  spec.max_escalations = 0;
  try {
    entropy_functional(fock_husimi(1), spec);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::tolerance_not_reached);
  }
}

TEST_CASE("line integrals") {
  const auto r = integrate_line([](double x) { return std::exp(-x * x); }, {}, 0.0, 3.0);
  CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  const auto shifted = integrate_line([](double x) { return std::exp(-(x - 5.0) * (x - 5.0)); }, {}, 5.0, 3.0);
  CHECK(shifted.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  const auto d = homodyne_density_fock(0);
  const auto h = differential_entropy_integral(d);
  CHECK(h.value == doctest::Approx(0.5 * std::log(std::numbers::pi * std::numbers::e)).epsilon(1e-10));
}
