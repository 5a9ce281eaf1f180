#pragma once

#include <functional>
#include <span>

#include "wehrl/phase_space.hpp"

namespace wehrl::detail {

struct TensorSum {
  double value = 0.0;
  double l1 = 0.0;  // same sum with |f|, for round-off floors
  long long nodes = 0;
};

// Tensor-product Gauss-Hermite approximation of the integral of f against
// d^d r / (2 pi)^{d/2}, with nodes placed by the Gaussian envelope. The
// envelope only positions the nodes; f is the full integrand.
TensorSum tensor_hermite(const GaussianEnvelope& envelope, int nodes_per_dim,
                         const std::function<double(std::span<const double>)>& f, int parallelism = 1);

}  // namespace wehrl::detail
