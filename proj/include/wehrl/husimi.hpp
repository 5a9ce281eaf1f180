#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "wehrl/gaussian.hpp"
#include "wehrl/phase_space.hpp"
#include "wehrl/state.hpp"

namespace wehrl {

// Point evaluations. Coordinates (x, p) are related to the coherent amplitude
// by alpha = (x + i p) / sqrt(2).
double q_fock(int n, double x, double p);
double q_thermal(double beta_omega, double x, double p);
double q_gaussian(const CovarianceModel& cov, std::span<const double> r);
double q_noon(int n, std::span<const double> r);
// Reduced N00N distribution of one mode, e^{-r^2/2} (r^{2N} + 2^N N!) / (2^{N+1} N!).
double q_noon_local(int n, double x, double p);

// Same functions expressed through u = (x^2 + p^2) / 2.
double q_fock_radial(int n, double u);
double q_thermal_radial(double beta_omega, double u);
double q_noon_local_radial(int n, double u);
// N00N distribution in (u_a, u_b, phi = theta_a - theta_b).
double q_noon_polar(int n, double u_a, double u_b, double phi);

// Position-quadrature densities of the homodyne measurement.
double homodyne_marginal_fock(int n, double x);
double homodyne_marginal_thermal(double beta_omega, double x);

// Gaussian Husimi function sqrt(det C) exp(-1/2 (r - mean)^T C (r - mean)).
struct GaussianForm {
  Matrix precision;
  Vector mean;
  double log_prefactor = 0.0;
};

// Evaluable Husimi Q-distribution. Immutable and safe to share between threads.
class HusimiEvaluator {
 public:
  using MarginalFn = std::function<HusimiEvaluator(Subsystem)>;

  explicit HusimiEvaluator(PhaseFunction q, MarginalFn marginal = {}, std::optional<GaussianForm> gaussian = {});

  double operator()(std::span<const double> r) const;

  const PhaseFunction& function() const noexcept { return q_; }
  ModePartition partition() const noexcept { return q_.partition; }
  const std::optional<GaussianForm>& gaussian() const noexcept { return gaussian_; }
  bool has_analytic_marginal() const noexcept { return static_cast<bool>(marginal_); }

  // Analytic marginal if available, otherwise Gauss-Hermite integration over
  // the traced subsystem.
  HusimiEvaluator marginal(Subsystem keep) const;

 private:
  PhaseFunction q_;
  MarginalFn marginal_;
  std::optional<GaussianForm> gaussian_;
};

HusimiEvaluator make_husimi(const ValidatedState& state);

HusimiEvaluator fock_husimi(int n);
HusimiEvaluator fock_mixture_husimi(const std::vector<FockWeight>& weights);
HusimiEvaluator thermal_husimi(double beta_omega);
HusimiEvaluator gaussian_husimi(const GaussianForm& form, ModePartition partition);
HusimiEvaluator gaussian_husimi(const CovarianceModel& cov);
HusimiEvaluator noon_husimi(int n);

// Q_A(r_A) Q_B(r_B) on the joint partition (n_a of `a`, n_a of `b`).
HusimiEvaluator product_husimi(const HusimiEvaluator& a, const HusimiEvaluator& b);
// Convex combination sum_k w_k Q_k of distributions on the same partition.
HusimiEvaluator mixture_husimi(const std::vector<HusimiEvaluator>& components, const std::vector<double>& weights);

// Node count per dimension used when a marginal has to be integrated numerically.
inline constexpr int numeric_marginal_nodes = 24;

HusimiEvaluator marginal_husimi(const HusimiEvaluator& q, Subsystem keep);

// Q(alpha | beta) = Q(alpha, beta) / Q_B(beta) as a distribution over subsystem A.
// Throws Error(condition_on_zero_density) when Q_B(beta) vanishes.
HusimiEvaluator conditional_husimi(const HusimiEvaluator& q, std::span<const double> beta);

// A one-dimensional probability density plus hints for the line quadrature.
struct Density1D {
  std::function<double(double)> f;
  // Interior points where f may vanish (integrand kinks).
  std::vector<double> breakpoints;
  double center = 0.0;
  // Initial half-width of the integration window; enlarged until the tail is negligible.
  double half_width = 10.0;
};

Density1D homodyne_density_fock(int n);
Density1D homodyne_density_mixture(const std::vector<FockWeight>& weights);
Density1D homodyne_density_thermal(double beta_omega);

}  // namespace wehrl
