#include "wehrl/eur.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wehrl/constants.hpp"
#include "wehrl/detail/parallel.hpp"
#include "wehrl/entropies.hpp"
#include "wehrl/error.hpp"
#include "wehrl/husimi.hpp"

namespace wehrl {

namespace {

constexpr double fl_shift = 1.0 - std::numbers::ln2;

void fill_deficits(EurReport& r) {
  r.bound = eur_bound();
  r.wl_deficit = r.wl_lhs - r.bound;
  r.bbm_deficit = r.bbm_lhs - r.bound;
  r.fl_deficit = r.fl_lhs - r.bound;
}

QuadratureSpec serial(QuadratureSpec spec) {
  spec.parallelism = 1;
  return spec;
}

}  // namespace

double eur_bound() { return constants::ln_e_pi; }

EurReport eur_thermal_closed(double beta_omega) {
  if (!(beta_omega > 0.0) || !std::isfinite(beta_omega)) {
    throw Error(ErrorCode::invalid_parameter, "beta*omega must be positive and finite");
  }
  const double b = beta_omega;
  EurReport r;
  r.state = Thermal{b};
  r.grid_param = b;
  // ln((pi/2) csch(b/2)) written as ln pi - b/2 - ln(1 - e^{-b}) to stay finite for large b.
  r.wl_lhs = 1.0 + constants::ln_pi - std::log(-std::expm1(-b));
  r.bbm_lhs = 1.0 + constants::ln_pi - std::log(std::tanh(0.5 * b));
  r.fl_lhs = 2.0 + std::log(0.5 * std::numbers::pi * -std::expm1(-b) / std::tanh(0.5 * b)) - b / std::expm1(b);
  fill_deficits(r);
  return r;
}

EurReport eur_report(const ValidatedState& state, const QuadratureSpec& spec) {
  if (const auto* t = state.get_if<Thermal>()) {
    EurReport r = eur_thermal_closed(t->beta_omega);
    const double wl_numeric = entropy_functional(make_husimi(state), spec).value + constants::ln_pi;
    const double h_numeric = differential_entropy_marginal(homodyne_density(state), spec);
    r.cross_check_delta =
        std::max(std::abs(wl_numeric - r.wl_lhs), std::abs(2.0 * h_numeric - r.bbm_lhs));
    return r;
  }
  if (!state.get_if<Fock>() && !state.get_if<FockMixture>()) {
    throw Error(ErrorCode::unsupported_state, "uncertainty relations are evaluated for Fock, mixture and thermal states");
  }
  EurReport r;
  r.state = state.spec();
  const double numeric = entropy_functional(make_husimi(state), spec).value;
  if (const auto closed = wehrl_closed_form(state)) {
    r.wl_lhs = *closed + constants::ln_pi;
    r.cross_check_delta = std::abs(*closed - numeric);
  } else {
    r.wl_lhs = numeric + constants::ln_pi;
    QuadratureSpec polar = spec;
    polar.strategy = Strategy::polar_2d;
    r.cross_check_delta = std::abs(entropy_functional(make_husimi(state), polar).value - numeric);
  }
  // x and p marginals coincide for Fock-diagonal states.
  r.bbm_lhs = 2.0 * differential_entropy_marginal(homodyne_density(state), spec);
  r.fl_lhs = r.bbm_lhs - von_neumann(state) + fl_shift;
  if (const auto* f = state.get_if<Fock>()) {
    r.grid_param = f->n;
  }
  fill_deficits(r);
  return r;
}

std::vector<double> mixture_grid(int steps) {
  if (steps < 2) {
    throw Error(ErrorCode::invalid_parameter, "mixture sweep needs at least 2 steps");
  }
  std::vector<double> q(steps);
  for (int i = 0; i < steps; ++i) {
    q[i] = static_cast<double>(i) / (steps - 1);
  }
  return q;
}

std::vector<double> thermal_grid(double beta_min, double beta_max, int points) {
  if (!(beta_min > 0.0) || !(beta_max >= beta_min) || !std::isfinite(beta_max) || points < 1) {
    throw Error(ErrorCode::invalid_parameter, "thermal sweep needs 0 < beta_min <= beta_max and points >= 1");
  }
  std::vector<double> b(points);
  const double lo = std::log(beta_min);
  const double hi = std::log(beta_max);
  for (int i = 0; i < points; ++i) {
    b[i] = points == 1 ? beta_min : std::exp(lo + (hi - lo) * i / (points - 1));
  }
  b.back() = beta_max;
  return b;
}

std::vector<EurReport> eur_sweep(const SweepSpec& sweep, const QuadratureSpec& spec) {
  const QuadratureSpec inner = serial(spec);
  switch (sweep.family) {
    case SweepFamily::fock: {
      if (sweep.n_max < 0) {
        throw Error(ErrorCode::invalid_parameter, "n_max must be nonnegative");
      }
      return detail::parallel_map<EurReport>(sweep.n_max + 1, spec.parallelism, [&](int n) {
        try {
          EurReport r = eur_report(fock_state(n), inner);
          if (sweep.asymptotics && n >= 1) {
            r.wl_asymptotic = wehrl_fock_stirling(n) + constants::ln_pi;
            r.bbm_asymptotic = 2.0 * differential_entropy_fock_asymptotic(n);
          }
          return r;
        } catch (const Error& e) {
          throw Error(e.code(), "n = " + std::to_string(n) + ": " + e.what());
        }
      });
    }
    case SweepFamily::mixture01: {
      const auto q = mixture_grid(sweep.steps);
      return detail::parallel_map<EurReport>(static_cast<int>(q.size()), spec.parallelism, [&](int i) {
        EurReport r = eur_report(mixture01_state(q[i]), inner);
        r.grid_param = q[i];
        return r;
      });
    }
    case SweepFamily::thermal: {
      const auto b = thermal_grid(sweep.beta_min, sweep.beta_max, sweep.points);
      return detail::parallel_map<EurReport>(static_cast<int>(b.size()), spec.parallelism,
                                             [&](int i) { return eur_report(thermal_state(b[i]), inner); });
    }
  }
  throw Error(ErrorCode::invalid_parameter, "unknown sweep family");
}

std::optional<double> mixture_crossover(const QuadratureSpec& spec, double resolution) {
  auto gap = [&](double q) {
    const auto r = eur_report(mixture01_state(q), spec);
    return r.wl_deficit - r.bbm_deficit;
  };
  // Scan for the first sign change, then bisect.
  constexpr int scan = 50;
  double lo = 0.0;
  double g_lo = gap(lo);
  for (int i = 1; i < scan; ++i) {
    const double hi = static_cast<double>(i) / scan;
    const double g_hi = gap(hi);
    if ((g_lo > 0.0) != (g_hi > 0.0)) {
      double a = lo, b = hi;
      while (b - a > resolution) {
        const double m = 0.5 * (a + b);
        if ((gap(m) > 0.0) == (g_lo > 0.0)) {
          a = m;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    }
    lo = hi;
    g_lo = g_hi;
  }
  return std::nullopt;
}

}  // namespace wehrl
