#pragma once

#include <vector>

namespace wehrl {

double log_factorial(int n);

// eta_n = 1 + 1/2 + ... + 1/n, eta_0 = 0.
double harmonic_number(int n);

// Normalized Hermite function psi_n(x) = H_n(x) e^{-x^2/2} / sqrt(sqrt(pi) 2^n n!),
// evaluated with the orthonormal three-term recurrence so that no factorial or
// power of two is ever formed explicitly.
double hermite_function(int n, double x);

// Physicists' Hermite polynomial H_n(x); overflows for large n and is only
// meant for tests and small-order checks.
double hermite_polynomial(int n, double x);

// -x ln x with the convention 0 ln 0 = 0 and a floor below which the
// contribution is dropped.
double neg_x_log_x(double x);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  // For Gauss-Hermite only: weights[i] * exp(nodes[i]^2), computed directly so
  // that the product stays accurate where the plain weight underflows.
  std::vector<double> scaled_weights;
};

// Gauss-Legendre rule on [-1, 1].
const GaussRule& gauss_legendre(int n);

// Gauss-Hermite rule for the weight exp(-t^2) on the real line.
const GaussRule& gauss_hermite(int n);

// Zeros of H_n in ascending order (the Gauss-Hermite nodes).
std::vector<double> hermite_zeros(int n);

}  // namespace wehrl
