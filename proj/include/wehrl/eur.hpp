#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wehrl/quadrature.hpp"
#include "wehrl/state.hpp"

namespace wehrl {

// Common right-hand side ln(e pi) of the three rearranged relations.
double eur_bound();

struct EurReport {
  StateSpec state;
  // Sweep coordinate: n, q or beta*omega.
  double grid_param = 0.0;
  double wl_lhs = 0.0;   // S_W + ln pi
  double bbm_lhs = 0.0;  // h(f) + h(g)
  double fl_lhs = 0.0;   // h(f) + h(g) - S + 1 - ln 2
  double bound = 0.0;
  double wl_deficit = 0.0;
  double bbm_deficit = 0.0;
  double fl_deficit = 0.0;
  // |closed form - quadrature| where both exist.
  std::optional<double> cross_check_delta;
  // Large-n forms of wl_lhs and bbm_lhs (Fock states, n >= 1).
  std::optional<double> wl_asymptotic;
  std::optional<double> bbm_asymptotic;
};

// Fock, Fock mixture or thermal states. Throws Error(unsupported_state) otherwise.
EurReport eur_report(const ValidatedState& state, const QuadratureSpec& spec = {});

// Closed forms only.
EurReport eur_thermal_closed(double beta_omega);

enum class SweepFamily { fock, mixture01, thermal };

struct SweepSpec {
  SweepFamily family = SweepFamily::fock;
  int n_max = 50;
  // Number of evenly spaced q values in [0, 1], endpoints included.
  int steps = 51;
  double beta_min = 0.05;
  double beta_max = 20.0;
  // Number of log-spaced beta*omega values in [beta_min, beta_max].
  int points = 60;
  bool asymptotics = false;
};

// Grid points are evaluated in parallel (spec.parallelism); the returned
// reports are in grid order.
std::vector<EurReport> eur_sweep(const SweepSpec& sweep, const QuadratureSpec& spec = {});

std::vector<double> mixture_grid(int steps);
std::vector<double> thermal_grid(double beta_min, double beta_max, int points);

// Smallest q in (0, 1) where the Wehrl-Lieb deficit drops below the BBM
// deficit for q |0><0| + (1 - q) |1><1|, located by bisection to `resolution`.
// Empty if the sign never changes.
std::optional<double> mixture_crossover(const QuadratureSpec& spec = {}, double resolution = 1e-9);

}  // namespace wehrl
