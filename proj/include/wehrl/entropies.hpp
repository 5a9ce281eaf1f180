#pragma once

#include <optional>
#include <string>

#include "wehrl/husimi.hpp"
#include "wehrl/quadrature.hpp"
#include "wehrl/state.hpp"

namespace wehrl {

// ln n! + n + 1 + n gamma - n eta_n.
double wehrl_fock_closed(int n);
// Large-n form 1/2 (1 + ln 2 pi n); n >= 1.
double wehrl_fock_stirling(int n);
// 1 - ln(1 - e^{-beta omega}).
double wehrl_thermal_closed(double beta_omega);

// Large-n form of the homodyne entropy of a Fock state, 1/2 (-2 + ln 2 pi^2 n).
double differential_entropy_fock_asymptotic(int n);
// ln sqrt(2 pi e sigma^2) with 1 / (2 sigma^2) = tanh(beta omega / 2).
double differential_entropy_thermal_closed(double beta_omega);

// -integral of f ln f dx.
double differential_entropy_marginal(const Density1D& density, const QuadratureSpec& spec = {});

// Homodyne density of the x quadrature. For the rotation-invariant states
// supported here (Fock, Fock mixture, thermal) the p density is identical.
// Throws Error(unsupported_state) for other states.
Density1D homodyne_density(const ValidatedState& state);

// Zero for pure states, the Shannon entropy of the weights for a Fock mixture
// and the Bose-Einstein expression for a thermal state. Throws
// Error(unsupported_state) for general Gaussian states; use
// gaussian_von_neumann for those.
double von_neumann(const ValidatedState& state);

struct RelativeEntropyResult {
  // +infinity when the support condition failed.
  double value = 0.0;
  double error_estimate = 0.0;
  long long nodes_used = 0;
  bool support_violation = false;
};

// Density thresholds of the numerical support check.
inline constexpr double support_rho_threshold = 1e-12;

// integral of Q_rho (ln Q_rho - ln Q_sigma). A node where Q_rho exceeds
// support_rho_threshold while Q_sigma is below the density floor marks a
// support violation and the result becomes the +infinity sentinel.
RelativeEntropyResult wehrl_relative_entropy(const HusimiEvaluator& rho, const HusimiEvaluator& sigma,
                                             const QuadratureSpec& spec = {});

// Throws Error(support_violation) for the sentinel, otherwise returns the value.
double require_finite(const RelativeEntropyResult& result);

struct BipartiteResult {
  double value = 0.0;
  double error_estimate = 0.0;
  // Same quantity from the alternative route (three entropies for the mutual
  // information, S_W(rho) - S_W(rho_B) for the conditional entropy).
  double cross_check = 0.0;
  double cross_check_error = 0.0;
  std::optional<double> closed_form;
};

// Everything the bipartite quantities are assembled from.
struct BipartiteEntropies {
  IntegralResult joint;
  IntegralResult local_a;
  IntegralResult local_b;
  RelativeEntropyResult relative;  // S_W(rho || rho_A (x) rho_B)
  int modes_a = 1;
};

BipartiteEntropies wehrl_bipartite(const HusimiEvaluator& q, const QuadratureSpec& spec = {});

// Mutual information via the relative entropy, cross-checked by S_A + S_B - S.
BipartiteResult mutual_information_from(const BipartiteEntropies& e);
// S_W(rho_A) - S_W(rho || rho_A (x) rho_B), cross-checked by S - S_B.
BipartiteResult conditional_entropy_from(const BipartiteEntropies& e);

BipartiteResult wehrl_mutual_information(const HusimiEvaluator& q, const QuadratureSpec& spec = {});
BipartiteResult wehrl_conditional_entropy(const HusimiEvaluator& q, const QuadratureSpec& spec = {});
BipartiteResult wehrl_mutual_information(const ValidatedState& state, const QuadratureSpec& spec = {});
BipartiteResult wehrl_conditional_entropy(const ValidatedState& state, const QuadratureSpec& spec = {});

// Wehrl entropy of a subsystem of a bipartite state.
IntegralResult wehrl_local(const HusimiEvaluator& q, Subsystem keep, const QuadratureSpec& spec = {});

struct WitnessVerdict {
  double mutual_information = 0.0;
  // I_W is called zero when it does not exceed this value.
  double tolerance = 0.0;
  bool entangled = false;

  std::string describe() const;
};

inline constexpr double default_witness_tolerance = 1e-6;

// Pure-state entanglement witness I_W > tolerance. The tolerance used is the
// larger of the requested one and twice the quadrature error estimate.
WitnessVerdict entanglement_witness(const ValidatedState& state, const QuadratureSpec& spec = {},
                                    double tolerance = default_witness_tolerance);

// 2 S(rho_A) of the pure two-mode squeezed state.
double quantum_mutual_information_tmss(double lambda);
// 2 ln 2 for n >= 1; zero for the product state n = 0.
double quantum_mutual_information_noon(int n);

enum class WehrlMethod { closed_form, quadrature, both };

std::string to_string(WehrlMethod m);

struct EntropyReport {
  StateSpec state;
  double wehrl = 0.0;
  WehrlMethod wehrl_method = WehrlMethod::quadrature;
  std::optional<double> differential_x;
  std::optional<double> differential_p;
  std::optional<double> von_neumann;
  std::optional<double> cross_check_delta;
  // Number of modes N, the Wehrl-Lieb lower bound.
  int modes = 1;
};

// Closed form whenever one exists; quadrature otherwise. When both are
// available both run and the difference is recorded.
EntropyReport entropy_report(const ValidatedState& state, const QuadratureSpec& spec = {});

// Closed-form Wehrl entropy if the state has one.
std::optional<double> wehrl_closed_form(const ValidatedState& state);

}  // namespace wehrl
