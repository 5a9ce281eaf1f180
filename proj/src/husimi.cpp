#include "wehrl/husimi.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "wehrl/constants.hpp"
#include "wehrl/detail/tensor_hermite.hpp"
#include "wehrl/error.hpp"
#include "wehrl/special.hpp"

namespace wehrl {

namespace {

double radius_u(double x, double p) { return 0.5 * (x * x + p * p); }

void require_dimension(std::span<const double> r, int dimension) {
  if (static_cast<int>(r.size()) != dimension) {
    throw Error(ErrorCode::dimension_mismatch,
                "expected " + std::to_string(dimension) + " coordinates, got " + std::to_string(r.size()));
  }
}

double thermal_rate(double beta_omega) { return -std::expm1(-beta_omega); }

double log_det_spd(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::singular_matrix, "matrix is not positive definite");
  }
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    s += 2.0 * std::log(llt.matrixL()(i, i));
  }
  return s;
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Rows/columns of the kept and traced subsystem inside a PhasePoint.
struct Split {
  int keep_offset, keep_size, trace_offset, trace_size;
};

Split split_for(ModePartition partition, Subsystem keep) {
  const auto l = block_layout(partition);
  if (keep == Subsystem::a) {
    return {l.offset_a, l.size_a, l.offset_b, l.size_b};
  }
  return {l.offset_b, l.size_b, l.offset_a, l.size_a};
}

Matrix block(const Matrix& m, int r0, int rn, int c0, int cn) { return m.block(r0, c0, rn, cn); }

GaussianEnvelope marginal_envelope(const GaussianEnvelope& env, const Split& s) {
  // Marginal of a Gaussian: invert, take the block, invert back.
  const Matrix cov = env.precision.inverse();
  const Matrix kept = block(cov, s.keep_offset, s.keep_size, s.keep_offset, s.keep_size);
  return {kept.inverse(), env.mean.segment(s.keep_offset, s.keep_size)};
}

}  // namespace

double q_fock_radial(int n, double u) {
  if (u <= 0.0) {
    return n == 0 ? 1.0 : 0.0;
  }
  if (n == 0) {
    return std::exp(-u);
  }
  return std::exp(n * std::log(u) - u - log_factorial(n));
}

double q_fock(int n, double x, double p) { return q_fock_radial(n, radius_u(x, p)); }

double q_thermal_radial(double beta_omega, double u) {
  const double a = thermal_rate(beta_omega);
  return a * std::exp(-a * u);
}

double q_thermal(double beta_omega, double x, double p) { return q_thermal_radial(beta_omega, radius_u(x, p)); }

double q_gaussian(const CovarianceModel& cov, std::span<const double> r) {
  require_dimension(r, cov.partition().dimension());
  const Eigen::Map<const Vector> rv(r.data(), static_cast<Eigen::Index>(r.size()));
  return std::exp(0.5 * cov.log_det_c() - 0.5 * rv.dot(cov.c() * rv));
}

double q_noon_polar(int n, double u_a, double u_b, double phi) {
  if (n == 0) {
    return std::exp(-u_a - u_b);
  }
  const double lf = log_factorial(n);
  const double la = u_a > 0.0 ? n * std::log(u_a) - lf : -std::numeric_limits<double>::infinity();
  const double lb = u_b > 0.0 ? n * std::log(u_b) - lf : -std::numeric_limits<double>::infinity();
  const double e = -u_a - u_b;
  const double s = std::exp(la + e) + std::exp(lb + e) + 2.0 * std::exp(0.5 * (la + lb) + e) * std::cos(n * phi);
  return std::max(0.5 * s, 0.0);
}

double q_noon(int n, std::span<const double> r) {
  require_dimension(r, 4);
  const double x_a = r[0], p_a = r[1], x_b = r[2], p_b = r[3];
  const double u_a = radius_u(x_a, p_a);
  const double u_b = radius_u(x_b, p_b);
  const double phi = std::atan2(p_a, x_a) - std::atan2(p_b, x_b);
  return q_noon_polar(n, u_a, u_b, phi);
}

double q_noon_local_radial(int n, double u) {
  if (n == 0) {
    return std::exp(-u);
  }
  return 0.5 * (q_fock_radial(n, u) + std::exp(-u));
}

double q_noon_local(int n, double x, double p) { return q_noon_local_radial(n, radius_u(x, p)); }

double homodyne_marginal_fock(int n, double x) {
  const double psi = hermite_function(n, x);
  return psi * psi;
}

double homodyne_marginal_thermal(double beta_omega, double x) {
  // Variance 1 / (2 tanh(beta omega / 2)).
  const double t = std::tanh(0.5 * beta_omega);
  return std::sqrt(t / std::numbers::pi) * std::exp(-t * x * x);
}

HusimiEvaluator::HusimiEvaluator(PhaseFunction q, MarginalFn marginal, std::optional<GaussianForm> gaussian)
    : q_(std::move(q)), marginal_(std::move(marginal)), gaussian_(std::move(gaussian)) {
  if (!q_.cartesian) {
    throw Error(ErrorCode::invalid_parameter, "Husimi function needs a Cartesian representation");
  }
  const int d = q_.dimension();
  if (q_.envelope.precision.size() == 0) {
    q_.envelope = vacuum_envelope(d);
  }
  if (q_.envelope.precision.rows() != d || q_.envelope.mean.size() != d) {
    throw Error(ErrorCode::dimension_mismatch, "envelope does not match the partition");
  }
}

double HusimiEvaluator::operator()(std::span<const double> r) const {
  require_dimension(r, q_.dimension());
  return q_.cartesian(r);
}

HusimiEvaluator HusimiEvaluator::marginal(Subsystem keep) const {
  if (!q_.partition.bipartite()) {
    throw Error(ErrorCode::not_bipartite, "marginal of a single-subsystem distribution");
  }
  if (marginal_) {
    return marginal_(keep);
  }
  if (gaussian_) {
    const Split s = split_for(q_.partition, keep);
    const Matrix& p = gaussian_->precision;
    const Matrix pkk = block(p, s.keep_offset, s.keep_size, s.keep_offset, s.keep_size);
    const Matrix ptt = block(p, s.trace_offset, s.trace_size, s.trace_offset, s.trace_size);
    const Matrix pkt = block(p, s.keep_offset, s.keep_size, s.trace_offset, s.trace_size);
    Eigen::LLT<Matrix> llt(ptt);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::degenerate_block, "traced block of the precision is singular");
    }
    GaussianForm m;
    m.precision = pkk - pkt * llt.solve(pkt.transpose());
    m.mean = gaussian_->mean.segment(s.keep_offset, s.keep_size);
    m.log_prefactor = gaussian_->log_prefactor - 0.5 * log_det_spd(ptt);
    const ModePartition kept{keep == Subsystem::a ? q_.partition.n_a : q_.partition.n_b, 0};
    return gaussian_husimi(m, kept);
  }
  return marginal_husimi(*this, keep);
}

HusimiEvaluator marginal_husimi(const HusimiEvaluator& q, Subsystem keep) {
  const ModePartition partition = q.partition();
  if (!partition.bipartite()) {
    throw Error(ErrorCode::not_bipartite, "marginal of a single-subsystem distribution");
  }
  const Split s = split_for(partition, keep);
  const GaussianEnvelope& env = q.function().envelope;
  const Matrix ptt = block(env.precision, s.trace_offset, s.trace_size, s.trace_offset, s.trace_size);
  const Matrix ptk = block(env.precision, s.trace_offset, s.trace_size, s.keep_offset, s.keep_size);
  const Matrix shift = ptt.llt().solve(ptk);
  const Vector mu_t = env.mean.segment(s.trace_offset, s.trace_size);
  const Vector mu_k = env.mean.segment(s.keep_offset, s.keep_size);

  PhaseFunction f;
  f.partition = {keep == Subsystem::a ? partition.n_a : partition.n_b, 0};
  f.envelope = marginal_envelope(env, s);
  f.radial_scale = q.function().radial_scale;
  f.radial_offset = q.function().radial_offset;
  f.cartesian = [q, s, ptt, shift, mu_t, mu_k](std::span<const double> rk) {
    const Eigen::Map<const Vector> rkv(rk.data(), static_cast<Eigen::Index>(rk.size()));
    // Place the inner nodes by the conditional of the envelope given r_keep.
    GaussianEnvelope inner{ptt, mu_t - shift * (rkv - mu_k)};
    const int d = s.keep_size + s.trace_size;
    std::vector<double> full(d);
    for (int i = 0; i < s.keep_size; ++i) {
      full[s.keep_offset + i] = rk[i];
    }
    auto integrand = [&](std::span<const double> rt) {
      for (int i = 0; i < s.trace_size; ++i) {
        full[s.trace_offset + i] = rt[i];
      }
      return q(full);
    };
    return detail::tensor_hermite(inner, numeric_marginal_nodes, integrand).value;
  };
  return HusimiEvaluator(std::move(f));
}

HusimiEvaluator gaussian_husimi(const GaussianForm& form, ModePartition partition) {
  const int d = partition.dimension();
  if (form.precision.rows() != d || form.precision.cols() != d || form.mean.size() != d) {
    throw Error(ErrorCode::dimension_mismatch, "Gaussian form does not match the partition");
  }
  PhaseFunction f;
  f.partition = partition;
  f.envelope = {form.precision, form.mean};
  f.cartesian = [form](std::span<const double> r) {
    const Eigen::Map<const Vector> rv(r.data(), static_cast<Eigen::Index>(r.size()));
    const Vector dr = rv - form.mean;
    return std::exp(form.log_prefactor - 0.5 * dr.dot(form.precision * dr));
  };
  const double lmin = min_eigenvalue(form.precision);
  f.radial_scale = 1.0 / lmin;
  f.radial_offset = form.mean.squaredNorm();
  if (d == 2 && form.mean.isZero(0.0)) {
    const double c = form.precision(0, 0);
    const bool isotropic = std::abs(form.precision(1, 1) - c) <= 1e-14 * c && form.precision(0, 1) == 0.0 &&
                           form.precision(1, 0) == 0.0;
    if (isotropic) {
      const double lp = form.log_prefactor;
      f.radial = [lp, c](double u) { return std::exp(lp - c * u); };
    }
  }
  return HusimiEvaluator(std::move(f), {}, form);
}

HusimiEvaluator gaussian_husimi(const CovarianceModel& cov) {
  const int d = cov.partition().dimension();
  return gaussian_husimi(GaussianForm{cov.c(), Vector::Zero(d), 0.5 * cov.log_det_c()}, cov.partition());
}

HusimiEvaluator fock_husimi(int n) {
  if (n < 0) {
    throw Error(ErrorCode::invalid_parameter, "Fock index must be nonnegative");
  }
  PhaseFunction f;
  f.partition = {1, 0};
  f.cartesian = [n](std::span<const double> r) { return q_fock(n, r[0], r[1]); };
  f.radial = [n](double u) { return q_fock_radial(n, u); };
  f.envelope = vacuum_envelope(2);
  f.radial_offset = n;
  return HusimiEvaluator(std::move(f));
}

HusimiEvaluator fock_mixture_husimi(const std::vector<FockWeight>& weights) {
  std::vector<FockWeight> kept;
  int n_max = 0;
  for (const auto& w : weights) {
    if (w.q > 0.0) {
      kept.push_back(w);
      n_max = std::max(n_max, w.n);
    }
  }
  auto radial = [kept](double u) {
    double s = 0.0;
    for (const auto& w : kept) {
      s += w.q * q_fock_radial(w.n, u);
    }
    return s;
  };
  PhaseFunction f;
  f.partition = {1, 0};
  f.cartesian = [radial](std::span<const double> r) { return radial(radius_u(r[0], r[1])); };
  f.radial = radial;
  f.envelope = vacuum_envelope(2);
  f.radial_offset = n_max;
  return HusimiEvaluator(std::move(f));
}

HusimiEvaluator thermal_husimi(double beta_omega) {
  if (!(beta_omega > 0.0) || !std::isfinite(beta_omega)) {
    throw Error(ErrorCode::invalid_parameter, "beta*omega must be positive and finite");
  }
  const double a = thermal_rate(beta_omega);
  auto ev = gaussian_husimi(GaussianForm{a * Matrix::Identity(2, 2), Vector::Zero(2), std::log(a)}, {1, 0});
  PhaseFunction f = ev.function();
  f.radial = [beta_omega](double u) { return q_thermal_radial(beta_omega, u); };
  f.cartesian = [beta_omega](std::span<const double> r) { return q_thermal(beta_omega, r[0], r[1]); };
  return HusimiEvaluator(std::move(f), {}, ev.gaussian());
}

HusimiEvaluator noon_husimi(int n) {
  if (n < 0) {
    throw Error(ErrorCode::invalid_parameter, "N00N excitation must be nonnegative");
  }
  PhaseFunction f;
  f.partition = {1, 1};
  f.cartesian = [n](std::span<const double> r) { return q_noon(n, r); };
  f.polar_reduced = [n](double u_a, double u_b, double phi) { return q_noon_polar(n, u_a, u_b, phi); };
  f.angular_order = n;
  f.envelope = vacuum_envelope(4);
  f.radial_offset = n;
  auto marginal = [n](Subsystem) {
    PhaseFunction m;
    m.partition = {1, 0};
    m.cartesian = [n](std::span<const double> r) { return q_noon_local(n, r[0], r[1]); };
    m.radial = [n](double u) { return q_noon_local_radial(n, u); };
    m.envelope = vacuum_envelope(2);
    m.radial_offset = n;
    return HusimiEvaluator(std::move(m));
  };
  return HusimiEvaluator(std::move(f), marginal);
}

HusimiEvaluator make_husimi(const ValidatedState& state) {
  if (const auto* s = state.get_if<Fock>()) {
    return fock_husimi(s->n);
  }
  if (const auto* s = state.get_if<FockMixture>()) {
    return fock_mixture_husimi(s->weights);
  }
  if (const auto* s = state.get_if<Thermal>()) {
    return thermal_husimi(s->beta_omega);
  }
  if (const auto* s = state.get_if<Noon>()) {
    return noon_husimi(s->excitation);
  }
  return gaussian_husimi(*state.covariance());
}

HusimiEvaluator product_husimi(const HusimiEvaluator& a, const HusimiEvaluator& b) {
  if (a.partition().bipartite() || b.partition().bipartite()) {
    throw Error(ErrorCode::invalid_parameter, "product factors must be single-subsystem distributions");
  }
  const int da = a.function().dimension();
  const int db = b.function().dimension();
  PhaseFunction f;
  f.partition = {a.partition().n_a, b.partition().n_a};
  f.cartesian = [a, b, da](std::span<const double> r) { return a(r.first(da)) * b(r.subspan(da)); };
  if (a.function().radial && b.function().radial) {
    auto ra = a.function().radial;
    auto rb = b.function().radial;
    f.polar_reduced = [ra, rb](double u_a, double u_b, double) { return ra(u_a) * rb(u_b); };
    f.angular_order = 0;
  }
  const auto& ea = a.function().envelope;
  const auto& eb = b.function().envelope;
  f.envelope.precision = Matrix::Zero(da + db, da + db);
  f.envelope.precision.topLeftCorner(da, da) = ea.precision;
  f.envelope.precision.bottomRightCorner(db, db) = eb.precision;
  f.envelope.mean = Vector(da + db);
  f.envelope.mean << ea.mean, eb.mean;
  f.radial_scale = std::max(a.function().radial_scale, b.function().radial_scale);
  f.radial_offset = std::max(a.function().radial_offset, b.function().radial_offset);

  std::optional<GaussianForm> form;
  if (a.gaussian() && b.gaussian()) {
    GaussianForm g;
    g.precision = f.envelope.precision;
    g.mean = f.envelope.mean;
    g.log_prefactor = a.gaussian()->log_prefactor + b.gaussian()->log_prefactor;
    form = g;
  }
  auto marginal = [a, b](Subsystem keep) { return keep == Subsystem::a ? a : b; };
  return HusimiEvaluator(std::move(f), marginal, form);
}

HusimiEvaluator mixture_husimi(const std::vector<HusimiEvaluator>& components, const std::vector<double>& weights) {
  if (components.empty() || components.size() != weights.size()) {
    throw Error(ErrorCode::invalid_parameter, "mixture needs one weight per component");
  }
  const ModePartition partition = components.front().partition();
  double total = 0.0;
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (!(components[k].partition() == partition)) {
      throw Error(ErrorCode::dimension_mismatch, "mixture components live on different partitions");
    }
    if (!(weights[k] >= 0.0)) {
      throw Error(ErrorCode::non_normalized_mixture, "mixture weights must be nonnegative");
    }
    total += weights[k];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::non_normalized_mixture, "mixture weights must sum to one");
  }
  if (components.size() == 1) {
    return components.front();
  }

  PhaseFunction f;
  f.partition = partition;
  f.cartesian = [components, weights](std::span<const double> r) {
    double s = 0.0;
    for (std::size_t k = 0; k < components.size(); ++k) {
      s += weights[k] * components[k](r);
    }
    return s;
  };
  const bool all_radial =
      std::all_of(components.begin(), components.end(), [](const auto& c) { return bool(c.function().radial); });
  if (all_radial) {
    std::vector<std::function<double(double)>> rs;
    for (const auto& c : components) {
      rs.push_back(c.function().radial);
    }
    f.radial = [rs, weights](double u) {
      double s = 0.0;
      for (std::size_t k = 0; k < rs.size(); ++k) {
        s += weights[k] * rs[k](u);
      }
      return s;
    };
  }
  const bool all_polar = std::all_of(components.begin(), components.end(),
                                     [](const auto& c) { return bool(c.function().polar_reduced); });
  if (all_polar) {
    std::vector<std::function<double(double, double, double)>> ps;
    int order = 0;
    for (const auto& c : components) {
      ps.push_back(c.function().polar_reduced);
      order = std::gcd(order, c.function().angular_order);
    }
    f.polar_reduced = [ps, weights](double u_a, double u_b, double phi) {
      double s = 0.0;
      for (std::size_t k = 0; k < ps.size(); ++k) {
        s += weights[k] * ps[k](u_a, u_b, phi);
      }
      return s;
    };
    f.angular_order = order;
  }

  // Envelope covariance: the smallest matrix found by eigenvalue clamping that
  // dominates every component covariance, plus the spread of the means.
  const int d = partition.dimension();
  Vector mean = Vector::Zero(d);
  for (std::size_t k = 0; k < components.size(); ++k) {
    mean += weights[k] * components[k].function().envelope.mean;
  }
  Matrix cover = components.front().function().envelope.precision.inverse();
  Matrix spread = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < components.size(); ++k) {
    const auto& env = components[k].function().envelope;
    const Matrix cov = env.precision.inverse();
    const Matrix l = Eigen::LLT<Matrix>(cover).matrixL();
    const Matrix rel = l.triangularView<Eigen::Lower>().solve(
        l.triangularView<Eigen::Lower>().solve(cov).transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig((0.5 * (rel + rel.transpose())).eval());
    const Vector clamped = eig.eigenvalues().cwiseMax(1.0);
    cover = l * eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose() * l.transpose();
    cover = (0.5 * (cover + cover.transpose())).eval();
    const Vector shift = env.mean - mean;
    spread += weights[k] * shift * shift.transpose();
    f.radial_scale = std::max(f.radial_scale, components[k].function().radial_scale);
    f.radial_offset = std::max(f.radial_offset, components[k].function().radial_offset);
  }
  const Matrix precision = (cover + spread).inverse();
  f.envelope = {0.9 * (0.5 * (precision + precision.transpose())), mean};

  HusimiEvaluator::MarginalFn marginal;
  if (partition.bipartite()) {
    marginal = [components, weights](Subsystem keep) {
      std::vector<HusimiEvaluator> parts;
      for (const auto& c : components) {
        parts.push_back(c.marginal(keep));
      }
      return mixture_husimi(parts, weights);
    };
  }
  return HusimiEvaluator(std::move(f), marginal);
}

HusimiEvaluator conditional_husimi(const HusimiEvaluator& q, std::span<const double> beta) {
  const ModePartition partition = q.partition();
  if (!partition.bipartite()) {
    throw Error(ErrorCode::not_bipartite, "conditioning needs a bipartite distribution");
  }
  const auto l = block_layout(partition);
  require_dimension(beta, l.size_b);
  const Eigen::Map<const Vector> bv(beta.data(), static_cast<Eigen::Index>(beta.size()));

  const auto q_b = q.marginal(Subsystem::b);
  const double density = q_b(beta);
  if (!(density > constants::density_floor)) {
    throw Error(ErrorCode::condition_on_zero_density, "Q_B vanishes at the conditioning point");
  }

  if (q.gaussian()) {
    const auto& g = *q.gaussian();
    const Matrix paa = g.precision.block(l.offset_a, l.offset_a, l.size_a, l.size_a);
    const Matrix pab = g.precision.block(l.offset_a, l.offset_b, l.size_a, l.size_b);
    GaussianForm c;
    c.precision = paa;
    c.mean = g.mean.segment(l.offset_a, l.size_a) - paa.llt().solve(pab * (bv - g.mean.segment(l.offset_b, l.size_b)));
    c.log_prefactor = 0.5 * log_det_spd(paa);
    return gaussian_husimi(c, {partition.n_a, 0});
  }

  const auto& env = q.function().envelope;
  const Matrix paa = env.precision.block(l.offset_a, l.offset_a, l.size_a, l.size_a);
  const Matrix pab = env.precision.block(l.offset_a, l.offset_b, l.size_a, l.size_b);
  PhaseFunction f;
  f.partition = {partition.n_a, 0};
  f.envelope = {paa, env.mean.segment(l.offset_a, l.size_a) -
                         paa.llt().solve(pab * (bv - env.mean.segment(l.offset_b, l.size_b)))};
  f.radial_scale = q.function().radial_scale;
  f.radial_offset = q.function().radial_offset + 0.5 * bv.squaredNorm();
  std::vector<double> b(beta.begin(), beta.end());
  f.cartesian = [q, b, density, l](std::span<const double> r_a) {
    std::vector<double> full(l.size_a + l.size_b);
    std::copy(r_a.begin(), r_a.end(), full.begin() + l.offset_a);
    std::copy(b.begin(), b.end(), full.begin() + l.offset_b);
    return q(full) / density;
  };
  return HusimiEvaluator(std::move(f));
}

namespace {

std::vector<double> merged_zeros(const std::vector<int>& orders) {
  std::vector<double> zs;
  for (int n : orders) {
    if (n > 0) {
      const auto z = hermite_zeros(n);
      zs.insert(zs.end(), z.begin(), z.end());
    }
  }
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }), zs.end());
  return zs;
}

}  // namespace

Density1D homodyne_density_fock(int n) {
  if (n < 0) {
    throw Error(ErrorCode::invalid_parameter, "Fock index must be nonnegative");
  }
  Density1D d;
  d.f = [n](double x) { return homodyne_marginal_fock(n, x); };
  d.breakpoints = merged_zeros({n});
  d.half_width = std::sqrt(2.0 * n + 1.0) + 8.0;
  return d;
}

Density1D homodyne_density_mixture(const std::vector<FockWeight>& weights) {
  std::vector<FockWeight> kept;
  std::vector<int> orders;
  int n_max = 0;
  for (const auto& w : weights) {
    if (w.q > 0.0) {
      kept.push_back(w);
      orders.push_back(w.n);
      n_max = std::max(n_max, w.n);
    }
  }
  Density1D d;
  d.f = [kept](double x) {
    double s = 0.0;
    for (const auto& w : kept) {
      s += w.q * homodyne_marginal_fock(w.n, x);
    }
    return s;
  };
  d.breakpoints = merged_zeros(orders);
  d.half_width = std::sqrt(2.0 * n_max + 1.0) + 8.0;
  return d;
}

Density1D homodyne_density_thermal(double beta_omega) {
  if (!(beta_omega > 0.0) || !std::isfinite(beta_omega)) {
    throw Error(ErrorCode::invalid_parameter, "beta*omega must be positive and finite");
  }
  Density1D d;
  d.f = [beta_omega](double x) { return homodyne_marginal_thermal(beta_omega, x); };
  const double sigma = std::sqrt(0.5 / std::tanh(0.5 * beta_omega));
  d.half_width = 10.0 * sigma;
  return d;
}

}  // namespace wehrl
