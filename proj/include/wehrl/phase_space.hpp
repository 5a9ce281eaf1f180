#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wehrl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Modes in subsystem A and B. Monopartite states carry n_b = 0.
struct ModePartition {
  int n_a = 1;
  int n_b = 0;

  int total() const noexcept { return n_a + n_b; }
  int dimension() const noexcept { return 2 * total(); }
  bool bipartite() const noexcept { return n_b > 0; }

  friend bool operator==(const ModePartition&, const ModePartition&) = default;
};

enum class Subsystem { a, b };

// Phase-space coordinates ordered (x_A..., p_A..., x_B..., p_B...), with the
// complex amplitude of mode j given by alpha_j = (x_j + i p_j) / sqrt(2).
using PhasePoint = std::vector<double>;

// Gaussian used by tensor-product Gauss-Hermite quadrature as the weight
// against which an integrand is sampled: exp(-1/2 (r - mean)^T precision (r - mean)).
struct GaussianEnvelope {
  Matrix precision;
  Vector mean;
};

// A real function on phase space together with every reduced representation
// the quadrature engine can exploit. All integrals are taken against the
// measure d^{2n}alpha / pi^n = d^n x d^n p / (2 pi)^n.
struct PhaseFunction {
  ModePartition partition;

  std::function<double(std::span<const double>)> cartesian;

  // Single-mode, rotation-invariant: f as a function of u = (x^2 + p^2) / 2.
  // Under this substitution the measure dx dp / (2 pi) becomes du after the
  // trivial angular integral.
  std::function<double(double)> radial;

  // 1+1 modes depending only on u_a, u_b and the relative phase
  // phi = theta_a - theta_b. Must be even in phi and periodic with period
  // 2 pi / angular_order; angular_order == 0 means independent of phi.
  std::function<double(double, double, double)> polar_reduced;
  int angular_order = 0;

  GaussianEnvelope envelope;

  // Typical extent of the function in u per mode (largest variance) and an
  // additive offset (e.g. the highest Fock index), used to place radial cutoffs.
  double radial_scale = 1.0;
  double radial_offset = 0.0;

  int dimension() const noexcept { return partition.dimension(); }
};

GaussianEnvelope vacuum_envelope(int dimension);

}  // namespace wehrl
