#include "wehrl/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/Dense>

#include "wehrl/constants.hpp"
#include "wehrl/error.hpp"

namespace wehrl {

double log_factorial(int n) {
  if (n < 0) {
    throw Error(ErrorCode::invalid_parameter, "log_factorial of a negative integer");
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double harmonic_number(int n) {
  double sum = 0.0;
  for (int k = n; k >= 1; --k) {
    sum += 1.0 / k;
  }
  return sum;
}

double hermite_function(int n, double x) {
  // Run the recurrence without the Gaussian factor, rescaling whenever the
  // iterate grows too large, and reattach exp(-x^2/2) in log space at the end.
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  double log_scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    const double mag = std::abs(cur);
    if (mag > 1e100) {
      prev /= mag;
      cur /= mag;
      log_scale += std::log(mag);
    }
  }
  if (cur == 0.0) {
    return 0.0;
  }
  const double log_mag = std::log(std::abs(cur)) + log_scale - 0.5 * x * x;
  return std::copysign(std::exp(log_mag), cur);
}

double hermite_polynomial(int n, double x) {
  if (n == 0) {
    return 1.0;
  }
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double neg_x_log_x(double x) {
  if (x < constants::density_floor) {
    return 0.0;
  }
  return -x * std::log(x);
}

namespace {

GaussRule build_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // Ascending order.
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Polynomials p_{n-1}(t), p_n(t) orthonormal for the weight exp(-t^2).
std::pair<double, double> hermite_pair(int n, double t) {
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * t * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

GaussRule build_hermite(int n) {
  // Golub-Welsch for initial estimates, then Newton on phi_n for full
  // relative accuracy of the weights in the tails.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(k / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.scaled_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = solver.eigenvalues()(i);
    for (int iter = 0; iter < 20; ++iter) {
      const auto [pm1, p] = hermite_pair(n, t);
      const double dp = std::sqrt(2.0 * n) * pm1 - t * p;
      const double dt = p / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15 * std::max(1.0, std::abs(t))) {
        break;
      }
    }
    const double phi_bare = hermite_pair(n, t).first;
    const double weight = 1.0 / (n * phi_bare * phi_bare);
    rule.nodes[i] = t;
    rule.weights[i] = weight;
    rule.scaled_weights[i] = weight * std::exp(t * t);
  }
  // Restore exact symmetry.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double t = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[i] = -t;
    rule.nodes[j] = t;
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    const double s = 0.5 * (rule.scaled_weights[i] + rule.scaled_weights[j]);
    rule.weights[i] = rule.weights[j] = w;
    rule.scaled_weights[i] = rule.scaled_weights[j] = s;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

template <typename Builder>
const GaussRule& cached(std::map<int, GaussRule>& cache, std::mutex& mutex, int n, Builder build) {
  if (n < 1) {
    throw Error(ErrorCode::invalid_parameter, "quadrature rule needs at least one node");
  }
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, build(n)).first;
  }
  return it->second;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  return cached(cache, mutex, n, build_legendre);
}

const GaussRule& gauss_hermite(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  return cached(cache, mutex, n, build_hermite);
}

std::vector<double> hermite_zeros(int n) {
  if (n == 0) {
    return {};
  }
  return gauss_hermite(n).nodes;
}

}  // namespace wehrl
