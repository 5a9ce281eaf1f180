#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wehrl/husimi.hpp"
#include "wehrl/phase_space.hpp"

namespace wehrl {

enum class Strategy { radial_1d, polar_2d, polar_reduced_3d, tensor_cartesian };

std::string to_string(Strategy s);
// Accepts the names produced by to_string; "auto" yields std::nullopt.
std::optional<Strategy> parse_strategy(std::string_view name);

inline const double default_radial_cutoff = std::sqrt(2.0 * 20.0 * std::log(10.0));

struct QuadratureSpec {
  // Unset means automatic selection from the representations a function offers.
  std::optional<Strategy> strategy;
  int radial_nodes = 400;
  int angular_nodes = 128;
  int cartesian_nodes_per_dim = 24;
  // Phase-space radius of the initial cutoff for a vacuum-sized state. It is
  // rescaled by the function's radial_scale, shifted by radial_offset and then
  // enlarged until the tail bound falls below abs_tol / 10.
  double radial_cutoff = default_radial_cutoff;
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  int parallelism = 1;
  int max_escalations = 3;

  // Throws Error(invalid_parameter) on non-positive fields.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  // |I(n) - I(n/2)| plus a round-off floor.
  double error_estimate = 0.0;
  long long nodes_used = 0;
  Strategy strategy = Strategy::tensor_cartesian;
  int escalations = 0;
  // Upper end of the radial (or line) integration range actually used.
  double cutoff = 0.0;
};

// Integral of f against d^{2n}alpha / pi^n. Throws Error(tolerance_not_reached)
// when the error estimate is still above max(abs_tol, rel_tol |value|) after
// the escalation schedule.
IntegralResult integrate(const PhaseFunction& f, const QuadratureSpec& spec = {});

// Strategy that integrate would pick for f.
Strategy select_strategy(const PhaseFunction& f, const QuadratureSpec& spec);

// -integral of Q ln Q.
IntegralResult entropy_functional(const HusimiEvaluator& q, const QuadratureSpec& spec = {});

// Integral of g over the real line. Breakpoints become panel ends; the window
// [center - w, center + w] starts at w = half_width and grows until |g| at its
// ends is negligible.
IntegralResult integrate_line(const std::function<double(double)>& g, const std::vector<double>& breakpoints,
                              double center, double half_width, const QuadratureSpec& spec = {});

// -integral of f ln f for a one-dimensional density.
IntegralResult differential_entropy_integral(const Density1D& density, const QuadratureSpec& spec = {});

}  // namespace wehrl
