#include "wehrl/entropies.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>

#include "wehrl/constants.hpp"
#include "wehrl/error.hpp"
#include "wehrl/gaussian.hpp"
#include "wehrl/special.hpp"

namespace wehrl {

namespace {

double infinity() { return std::numeric_limits<double>::infinity(); }

double log_det_spd(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::degenerate_block, "block is not positive definite");
  }
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    s += 2.0 * std::log(llt.matrixL()(i, i));
  }
  return s;
}

struct GaussianClosed {
  double mutual;
  double conditional;
};

std::optional<GaussianClosed> gaussian_closed(const HusimiEvaluator& q) {
  if (!q.gaussian()) {
    return std::nullopt;
  }
  const auto l = block_layout(q.partition());
  const Matrix& p = q.gaussian()->precision;
  const double ld = log_det_spd(p);
  const double la = log_det_spd(p.block(l.offset_a, l.offset_a, l.size_a, l.size_a));
  const double lb = log_det_spd(p.block(l.offset_b, l.offset_b, l.size_b, l.size_b));
  return GaussianClosed{0.5 * (la + lb - ld), q.partition().n_a - 0.5 * la};
}

}  // namespace

double wehrl_fock_closed(int n) {
  if (n < 0) {
    throw Error(ErrorCode::invalid_parameter, "Fock index must be nonnegative");
  }
  return log_factorial(n) + n + 1.0 + n * constants::euler_gamma - n * harmonic_number(n);
}

double wehrl_fock_stirling(int n) {
  if (n < 1) {
    throw Error(ErrorCode::invalid_parameter, "Stirling form needs n >= 1");
  }
  return 0.5 * (1.0 + std::log(2.0 * std::numbers::pi * n));
}

double wehrl_thermal_closed(double beta_omega) {
  if (!(beta_omega > 0.0) || !std::isfinite(beta_omega)) {
    throw Error(ErrorCode::invalid_parameter, "beta*omega must be positive and finite");
  }
  return 1.0 - std::log(-std::expm1(-beta_omega));
}

double differential_entropy_fock_asymptotic(int n) {
  if (n < 1) {
    throw Error(ErrorCode::invalid_parameter, "asymptotic form needs n >= 1");
  }
  return 0.5 * (-2.0 + std::log(2.0 * std::numbers::pi * std::numbers::pi * n));
}

double differential_entropy_thermal_closed(double beta_omega) {
  if (!(beta_omega > 0.0) || !std::isfinite(beta_omega)) {
    throw Error(ErrorCode::invalid_parameter, "beta*omega must be positive and finite");
  }
  const double sigma2 = 0.5 / std::tanh(0.5 * beta_omega);
  return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * sigma2);
}

double differential_entropy_marginal(const Density1D& density, const QuadratureSpec& spec) {
  return differential_entropy_integral(density, spec).value;
}

Density1D homodyne_density(const ValidatedState& state) {
  if (const auto* s = state.get_if<Fock>()) {
    return homodyne_density_fock(s->n);
  }
  if (const auto* s = state.get_if<FockMixture>()) {
    return homodyne_density_mixture(s->weights);
  }
  if (const auto* s = state.get_if<Thermal>()) {
    return homodyne_density_thermal(s->beta_omega);
  }
  throw Error(ErrorCode::unsupported_state, "homodyne densities are available for Fock, mixture and thermal states");
}

double von_neumann(const ValidatedState& state) {
  if (state.get_if<Fock>() || state.get_if<TwoModeSqueezed>() || state.get_if<Noon>()) {
    return 0.0;
  }
  if (const auto* s = state.get_if<FockMixture>()) {
    double h = 0.0;
    for (const auto& w : s->weights) {
      h += neg_x_log_x(w.q);
    }
    return h;
  }
  if (const auto* s = state.get_if<Thermal>()) {
    const double b = s->beta_omega;
    return -std::log(-std::expm1(-b)) + b / std::expm1(b);
  }
  throw Error(ErrorCode::unsupported_state,
              "von Neumann entropy of a general Gaussian state comes from its symplectic spectrum");
}

RelativeEntropyResult wehrl_relative_entropy(const HusimiEvaluator& rho, const HusimiEvaluator& sigma,
                                             const QuadratureSpec& spec) {
  if (!(rho.partition() == sigma.partition())) {
    throw Error(ErrorCode::dimension_mismatch, "relative entropy of distributions on different partitions");
  }
  auto violated = std::make_shared<std::atomic<bool>>(false);
  auto kl = [violated](double a, double b) {
    if (!(a > constants::density_floor)) {
      return 0.0;
    }
    if (!(b >= constants::density_floor)) {
      if (a > support_rho_threshold) {
        violated->store(true, std::memory_order_relaxed);
      }
      b = constants::density_floor;
    }
    return a * (std::log(a) - std::log(b));
  };

  const PhaseFunction& fr = rho.function();
  const PhaseFunction& fs = sigma.function();
  PhaseFunction f;
  f.partition = fr.partition;
  f.envelope = fr.envelope;
  f.radial_scale = std::max(fr.radial_scale, fs.radial_scale);
  f.radial_offset = std::max(fr.radial_offset, fs.radial_offset);
  f.cartesian = [kl, rho, sigma](std::span<const double> r) { return kl(rho(r), sigma(r)); };
  if (fr.radial && fs.radial) {
    f.radial = [kl, a = fr.radial, b = fs.radial](double u) { return kl(a(u), b(u)); };
  }
  if (fr.polar_reduced && fs.polar_reduced) {
    f.polar_reduced = [kl, a = fr.polar_reduced, b = fs.polar_reduced](double u_a, double u_b, double phi) {
      return kl(a(u_a, u_b, phi), b(u_a, u_b, phi));
    };
    f.angular_order = std::gcd(fr.angular_order, fs.angular_order);
  }

  RelativeEntropyResult out;
  try {
    const auto r = integrate(f, spec);
    out.value = r.value;
    out.error_estimate = r.error_estimate;
    out.nodes_used = r.nodes_used;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::tolerance_not_reached || !violated->load()) {
      throw;
    }
  }
  if (violated->load()) {
    out.value = infinity();
    out.support_violation = true;
  }
  return out;
}

double require_finite(const RelativeEntropyResult& result) {
  if (result.support_violation) {
    throw Error(ErrorCode::support_violation, "Q_sigma vanishes where Q_rho does not");
  }
  return result.value;
}

IntegralResult wehrl_local(const HusimiEvaluator& q, Subsystem keep, const QuadratureSpec& spec) {
  return entropy_functional(q.marginal(keep), spec);
}

BipartiteEntropies wehrl_bipartite(const HusimiEvaluator& q, const QuadratureSpec& spec) {
  if (!q.partition().bipartite()) {
    throw Error(ErrorCode::not_bipartite, "bipartite entropies need n_b >= 1");
  }
  const auto qa = q.marginal(Subsystem::a);
  const auto qb = q.marginal(Subsystem::b);
  BipartiteEntropies e;
  e.modes_a = q.partition().n_a;
  e.joint = entropy_functional(q, spec);
  e.local_a = entropy_functional(qa, spec);
  e.local_b = entropy_functional(qb, spec);
  e.relative = wehrl_relative_entropy(q, product_husimi(qa, qb), spec);
  return e;
}

BipartiteResult mutual_information_from(const BipartiteEntropies& e) {
  BipartiteResult r;
  r.value = require_finite(e.relative);
  r.error_estimate = e.relative.error_estimate;
  r.cross_check = e.local_a.value + e.local_b.value - e.joint.value;
  r.cross_check_error = e.local_a.error_estimate + e.local_b.error_estimate + e.joint.error_estimate;
  return r;
}

BipartiteResult conditional_entropy_from(const BipartiteEntropies& e) {
  BipartiteResult r;
  r.value = e.local_a.value - require_finite(e.relative);
  r.error_estimate = e.local_a.error_estimate + e.relative.error_estimate;
  r.cross_check = e.joint.value - e.local_b.value;
  r.cross_check_error = e.joint.error_estimate + e.local_b.error_estimate;
  return r;
}

BipartiteResult wehrl_mutual_information(const HusimiEvaluator& q, const QuadratureSpec& spec) {
  auto r = mutual_information_from(wehrl_bipartite(q, spec));
  if (const auto g = gaussian_closed(q)) {
    r.closed_form = g->mutual;
  }
  return r;
}

BipartiteResult wehrl_conditional_entropy(const HusimiEvaluator& q, const QuadratureSpec& spec) {
  auto r = conditional_entropy_from(wehrl_bipartite(q, spec));
  if (const auto g = gaussian_closed(q)) {
    r.closed_form = g->conditional;
  }
  return r;
}

BipartiteResult wehrl_mutual_information(const ValidatedState& state, const QuadratureSpec& spec) {
  auto r = wehrl_mutual_information(make_husimi(state), spec);
  if (const auto* s = state.get_if<Noon>(); s && s->excitation == 0) {
    r.closed_form = 0.0;
  }
  return r;
}

BipartiteResult wehrl_conditional_entropy(const ValidatedState& state, const QuadratureSpec& spec) {
  auto r = wehrl_conditional_entropy(make_husimi(state), spec);
  if (const auto* s = state.get_if<Noon>(); s && s->excitation == 0) {
    r.closed_form = 1.0;
  }
  return r;
}

std::string WitnessVerdict::describe() const {
  std::ostringstream out;
  out.precision(3);
  if (entangled) {
    out << "entangled (I_W = " << mutual_information << " > " << tolerance << ")";
  } else {
    out << "product within tolerance (I_W = " << mutual_information << " <= " << tolerance << ")";
  }
  return out.str();
}

WitnessVerdict entanglement_witness(const ValidatedState& state, const QuadratureSpec& spec, double tolerance) {
  const auto r = wehrl_mutual_information(state, spec);
  WitnessVerdict v;
  v.mutual_information = r.value;
  v.tolerance = std::max(tolerance, 2.0 * r.error_estimate);
  v.entangled = r.value > v.tolerance;
  return v;
}

double quantum_mutual_information_tmss(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw Error(ErrorCode::lambda_out_of_range, "two-mode squeezing needs 0 <= lambda < 1");
  }
  // cosh^2 r = 1 / (1 - lambda^2), sinh^2 r = lambda^2 / (1 - lambda^2).
  const double l2 = lambda * lambda;
  const double c = 1.0 / (1.0 - l2);
  const double s = l2 / (1.0 - l2);
  const double entropy = c * std::log(c) - (s > 0.0 ? s * std::log(s) : 0.0);
  return 2.0 * entropy;
}

double quantum_mutual_information_noon(int n) {
  if (n < 0) {
    throw Error(ErrorCode::invalid_parameter, "N00N excitation must be nonnegative");
  }
  return n == 0 ? 0.0 : 2.0 * std::numbers::ln2;
}

std::string to_string(WehrlMethod m) {
  switch (m) {
    case WehrlMethod::closed_form: return "closed-form";
    case WehrlMethod::quadrature: return "quadrature";
    case WehrlMethod::both: return "both";
  }
  return "unknown";
}

std::optional<double> wehrl_closed_form(const ValidatedState& state) {
  if (const auto* s = state.get_if<Fock>()) {
    return wehrl_fock_closed(s->n);
  }
  if (const auto* s = state.get_if<Thermal>()) {
    return wehrl_thermal_closed(s->beta_omega);
  }
  if (const auto* s = state.get_if<Noon>(); s && s->excitation == 0) {
    return 2.0;
  }
  if (const auto* s = state.get_if<FockMixture>(); s && s->weights.size() == 1) {
    return wehrl_fock_closed(s->weights.front().n);
  }
  if (state.covariance()) {
    return wehrl_gaussian_joint(*state.covariance());
  }
  return std::nullopt;
}

EntropyReport entropy_report(const ValidatedState& state, const QuadratureSpec& spec) {
  EntropyReport r;
  r.state = state.spec();
  r.modes = state.partition().total();
  const auto numeric = entropy_functional(make_husimi(state), spec);
  if (const auto closed = wehrl_closed_form(state)) {
    r.wehrl = *closed;
    r.wehrl_method = WehrlMethod::both;
    r.cross_check_delta = std::abs(*closed - numeric.value);
  } else {
    r.wehrl = numeric.value;
    r.wehrl_method = WehrlMethod::quadrature;
  }
  if (!state.partition().bipartite() && !state.covariance()) {
    if (const auto* t = state.get_if<Thermal>()) {
      r.differential_x = differential_entropy_thermal_closed(t->beta_omega);
    } else {
      r.differential_x = differential_entropy_marginal(homodyne_density(state), spec);
    }
    r.differential_p = r.differential_x;
  }
  if (state.covariance() && !state.get_if<TwoModeSqueezed>()) {
    r.von_neumann = gaussian_von_neumann(state.covariance()->v(), state.partition());
  } else {
    r.von_neumann = von_neumann(state);
  }
  return r;
}

}  // namespace wehrl
