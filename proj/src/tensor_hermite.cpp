#include "wehrl/detail/tensor_hermite.hpp"

#include <cmath>
#include <numbers>

#include "wehrl/detail/parallel.hpp"
#include "wehrl/error.hpp"
#include "wehrl/special.hpp"

namespace wehrl::detail {

TensorSum tensor_hermite(const GaussianEnvelope& envelope, int nodes_per_dim,
                         const std::function<double(std::span<const double>)>& f, int parallelism) {
  const int d = static_cast<int>(envelope.precision.rows());
  if (d == 0) {
    const double v = f({});
    return {v, std::abs(v), 1};
  }
  Eigen::LLT<Matrix> llt(envelope.precision);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::singular_matrix, "quadrature envelope is not positive definite");
  }
  // r = mean + L^{-T} sqrt(2) t maps the envelope onto exp(-t^T t).
  const Matrix transform =
      llt.matrixU().solve(Matrix::Identity(d, d)) * std::numbers::sqrt2;
  double log_det = 0.0;
  for (int i = 0; i < d; ++i) {
    log_det += 2.0 * std::log(llt.matrixL()(i, i));
  }
  const double jacobian = std::exp(-0.5 * log_det);

  const auto& rule = gauss_hermite(nodes_per_dim);
  const int n = nodes_per_dim;
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = rule.scaled_weights[i] / std::sqrt(std::numbers::pi);
  }

  struct Partial {
    double value = 0.0;
    double l1 = 0.0;
  };
  auto task = [&](int first) {
    std::vector<int> idx(d, 0);
    idx[0] = first;
    Vector t(d);
    std::vector<double> r(d);
    Partial out;
    while (true) {
      double weight = 1.0;
      for (int k = 0; k < d; ++k) {
        t[k] = rule.nodes[idx[k]];
        weight *= w[idx[k]];
      }
      const Vector rv = envelope.mean + transform * t;
      for (int k = 0; k < d; ++k) {
        r[k] = rv[k];
      }
      const double v = f(r);
      out.value += weight * v;
      out.l1 += weight * std::abs(v);
      int k = d - 1;
      while (k >= 1 && ++idx[k] == n) {
        idx[k] = 0;
        --k;
      }
      if (k < 1) {
        break;
      }
    }
    return out;
  };
  const auto parts = parallel_map<Partial>(n, parallelism, task);
  std::vector<double> values(n), l1(n);
  for (int i = 0; i < n; ++i) {
    values[i] = parts[i].value;
    l1[i] = parts[i].l1;
  }
  long long total = 1;
  for (int k = 0; k < d; ++k) {
    total *= n;
  }
  return {jacobian * pairwise_sum(values), jacobian * pairwise_sum(l1), total};
}

}  // namespace wehrl::detail
