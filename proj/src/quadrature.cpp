#include "wehrl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wehrl/detail/parallel.hpp"
#include "wehrl/detail/tensor_hermite.hpp"
#include "wehrl/error.hpp"
#include "wehrl/special.hpp"

namespace wehrl {

namespace {

constexpr int panel_order = 20;
constexpr int angular_panel_order = 16;
constexpr int graded_panels = 8;
constexpr double grading_ratio = 0.25;
constexpr double cutoff_growth = 1.25;
constexpr int max_cutoff_growths = 60;
constexpr double roundoff_floor = 1e-14;

struct Sum {
  double value = 0.0;
  double l1 = 0.0;
  long long nodes = 0;
};

struct Node {
  double x;
  double w;
};

struct Panel {
  double lo;
  double hi;
};

void append_gl(std::vector<Node>& out, const Panel& p, int order) {
  const auto& rule = gauss_legendre(order);
  const double half = 0.5 * (p.hi - p.lo);
  const double mid = 0.5 * (p.hi + p.lo);
  for (int i = 0; i < order; ++i) {
    out.push_back({mid + half * rule.nodes[i], half * rule.weights[i]});
  }
}

// Composite Gauss-Legendre panels on [0, upper], uniform except for the first
// panel, which is split geometrically towards the origin.
std::vector<Panel> radial_panels(double upper, int nodes) {
  const int total = std::max(1, nodes / panel_order);
  const int graded = std::min(graded_panels, total - 1);
  const int uniform = total - graded;
  const double h = upper / uniform;
  std::vector<Panel> panels;
  double lo = 0.0;
  for (int j = graded; j >= 1; --j) {
    const double hi = h * std::pow(grading_ratio, j);
    panels.push_back({lo, hi});
    lo = hi;
  }
  panels.push_back({lo, h});
  for (int i = 1; i < uniform; ++i) {
    panels.push_back({i * h, (i + 1) * h});
  }
  return panels;
}

// Splits p geometrically towards whichever ends are flagged.
void append_graded(std::vector<Panel>& out, Panel p, bool toward_lo, bool toward_hi) {
  if (toward_lo && toward_hi) {
    const double mid = 0.5 * (p.lo + p.hi);
    append_graded(out, {p.lo, mid}, true, false);
    append_graded(out, {mid, p.hi}, false, true);
    return;
  }
  if (!toward_lo && !toward_hi) {
    out.push_back(p);
    return;
  }
  const double width = p.hi - p.lo;
  std::vector<double> cuts{0.0};
  for (int j = graded_panels / 2; j >= 1; --j) {
    cuts.push_back(std::pow(grading_ratio, j));
  }
  cuts.push_back(1.0);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (toward_lo) {
      out.push_back({p.lo + width * cuts[i], p.lo + width * cuts[i + 1]});
    } else {
      out.push_back({p.hi - width * cuts[i + 1], p.hi - width * cuts[i]});
    }
  }
}

std::vector<Node> radial_rule(double upper, int nodes) {
  std::vector<Node> out;
  for (const auto& p : radial_panels(upper, nodes)) {
    append_gl(out, p, panel_order);
  }
  return out;
}

// Gauss-Legendre panels on [lo, hi], graded towards the flagged ends.
std::vector<Node> graded_rule(double lo, double hi, int nodes, bool toward_lo, bool toward_hi) {
  const int order = std::min(nodes, angular_panel_order);
  const int count = std::max(1, nodes / order);
  std::vector<Panel> panels;
  for (int i = 0; i < count; ++i) {
    const Panel p{lo + (hi - lo) * i / count, lo + (hi - lo) * (i + 1) / count};
    append_graded(panels, p, toward_lo && i == 0, toward_hi && i == count - 1);
  }
  std::vector<Node> out;
  for (const auto& p : panels) {
    append_gl(out, p, order);
  }
  return out;
}

Sum reduce(const std::vector<Sum>& parts) {
  std::vector<double> v(parts.size()), a(parts.size());
  long long nodes = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    v[i] = parts[i].value;
    a[i] = parts[i].l1;
    nodes += parts[i].nodes;
  }
  return {detail::pairwise_sum(v), detail::pairwise_sum(a), nodes};
}

double tolerance(const QuadratureSpec& spec, double value) {
  return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

double initial_cutoff(const PhaseFunction& f, const QuadratureSpec& spec) {
  return f.radial_offset + f.radial_scale * 0.5 * spec.radial_cutoff * spec.radial_cutoff;
}

// Enlarges u until tail(u) <= abs_tol / 10.
template <typename Tail>
double grow_cutoff(double u, const QuadratureSpec& spec, const Tail& tail) {
  for (int i = 0; i < max_cutoff_growths && tail(u) > 0.1 * spec.abs_tol; ++i) {
    u *= cutoff_growth;
  }
  return u;
}

// Runs the rule at node multipliers 1/2, 1, 2, 4, ... and stops as soon as the
// difference of the last two levels is within tolerance.
template <typename Rule>
IntegralResult escalate(const Rule& rule, const QuadratureSpec& spec, Strategy strategy, double cutoff) {
  Sum coarse = rule(-1);
  Sum fine;
  double err = 0.0;
  for (int level = 0; level <= spec.max_escalations; ++level) {
    fine = rule(level);
    err = std::abs(fine.value - coarse.value) + roundoff_floor * fine.l1;
    if (!std::isfinite(fine.value)) {
      break;
    }
    if (err <= tolerance(spec, fine.value)) {
      return {fine.value, err, fine.nodes, strategy, level, cutoff};
    }
    coarse = fine;
  }
  std::ostringstream msg;
  msg.precision(6);
  msg << to_string(strategy) << " quadrature: error estimate " << err << " above tolerance "
      << tolerance(spec, fine.value) << " after " << spec.max_escalations << " escalations (value " << fine.value
      << ")";
  throw Error(ErrorCode::tolerance_not_reached, msg.str());
}

int scaled(int base, int level) {
  if (level < 0) {
    return std::max(1, base / 2);
  }
  return base << level;
}

IntegralResult run_radial(const PhaseFunction& f, const QuadratureSpec& spec) {
  const auto& g = f.radial;
  const double scale = f.radial_scale;
  const double upper = grow_cutoff(initial_cutoff(f, spec), spec, [&](double u) {
    return 4.0 * scale * std::max(std::abs(g(u)), std::abs(g(0.9 * u)));
  });
  auto rule = [&](int level) {
    const auto panels = radial_panels(upper, scaled(spec.radial_nodes, level));
    auto task = [&](int i) {
      std::vector<Node> nodes;
      append_gl(nodes, panels[i], panel_order);
      Sum s;
      for (const auto& n : nodes) {
        const double v = g(n.x);
        s.value += n.w * v;
        s.l1 += n.w * std::abs(v);
      }
      s.nodes = static_cast<long long>(nodes.size());
      return s;
    };
    return reduce(detail::parallel_map<Sum>(static_cast<int>(panels.size()), spec.parallelism, task));
  };
  return escalate(rule, spec, Strategy::radial_1d, upper);
}

IntegralResult run_polar_2d(const PhaseFunction& f, const QuadratureSpec& spec) {
  const double x0 = f.envelope.mean.size() == 2 ? f.envelope.mean[0] : 0.0;
  const double p0 = f.envelope.mean.size() == 2 ? f.envelope.mean[1] : 0.0;
  auto eval = [&](double u, double theta) {
    const double r = std::sqrt(2.0 * u);
    const double pt[2] = {x0 + r * std::cos(theta), p0 + r * std::sin(theta)};
    return f.cartesian(pt);
  };
  const double upper = grow_cutoff(initial_cutoff(f, spec), spec, [&](double u) {
    double m = 0.0;
    for (int k = 0; k < 16; ++k) {
      m = std::max(m, std::abs(eval(u, 2.0 * std::numbers::pi * k / 16)));
    }
    return 4.0 * f.radial_scale * m;
  });
  auto rule = [&](int level) {
    const auto panels = radial_panels(upper, scaled(spec.radial_nodes, level));
    const int m = scaled(spec.angular_nodes, level);
    auto task = [&](int i) {
      std::vector<Node> nodes;
      append_gl(nodes, panels[i], panel_order);
      Sum s;
      for (const auto& n : nodes) {
        // Periodic trapezoid in theta.
        for (int k = 0; k < m; ++k) {
          const double v = eval(n.x, 2.0 * std::numbers::pi * k / m);
          s.value += n.w * v / m;
          s.l1 += n.w * std::abs(v) / m;
        }
      }
      s.nodes = static_cast<long long>(nodes.size()) * m;
      return s;
    };
    return reduce(detail::parallel_map<Sum>(static_cast<int>(panels.size()), spec.parallelism, task));
  };
  return escalate(rule, spec, Strategy::polar_2d, upper);
}

// Coordinates s = u_a + u_b, t = u_a / s and the relative phase, so that
// du_a du_b = s ds dt. Panel ends at t = 1/2 and at both ends of the phase
// interval line up with the zeros of exchange-symmetric distributions such as
// the N00N states, where -Q ln Q is not smooth.
IntegralResult run_polar_reduced(const PhaseFunction& f, const QuadratureSpec& spec) {
  const auto& g = f.polar_reduced;
  const int order = f.angular_order;
  const double period = order > 0 ? std::numbers::pi / order : 0.0;
  const double upper = grow_cutoff(2.0 * initial_cutoff(f, spec), spec, [&](double s) {
    double m = 0.0;
    for (int i = 0; i <= 8; ++i) {
      const double t = i / 8.0;
      for (int k = 0; k <= 4; ++k) {
        m = std::max(m, std::abs(g(s * t, s * (1.0 - t), period * k / 4.0)));
      }
    }
    return 4.0 * f.radial_scale * s * m;
  });
  auto rule = [&](int level) {
    const auto radial = radial_rule(upper, scaled(spec.radial_nodes, level));
    const int m = scaled(spec.angular_nodes, level);
    auto split = graded_rule(0.0, 0.5, m / 2, false, true);
    const auto right = graded_rule(0.5, 1.0, m / 2, true, false);
    split.insert(split.end(), right.begin(), right.end());
    std::vector<Node> angular;
    if (order > 0) {
      angular = graded_rule(0.0, period, m, true, true);
      for (auto& a : angular) {
        a.w /= period;
      }
    } else {
      angular.push_back({0.0, 1.0});
    }
    const int count = static_cast<int>(radial.size());
    auto task = [&](int i) {
      Sum sum;
      const double s = radial[i].x;
      for (const auto& t : split) {
        const double u_a = s * t.x;
        const double u_b = s - u_a;
        double row = 0.0, row_abs = 0.0;
        for (const auto& a : angular) {
          const double v = g(u_a, u_b, a.x);
          row += a.w * v;
          row_abs += a.w * std::abs(v);
        }
        sum.value += t.w * row;
        sum.l1 += t.w * row_abs;
      }
      sum.value *= s * radial[i].w;
      sum.l1 *= s * radial[i].w;
      sum.nodes = static_cast<long long>(split.size()) * static_cast<long long>(angular.size());
      return sum;
    };
    return reduce(detail::parallel_map<Sum>(count, spec.parallelism, task));
  };
  return escalate(rule, spec, Strategy::polar_reduced_3d, upper);
}

IntegralResult run_tensor(const PhaseFunction& f, const QuadratureSpec& spec) {
  auto rule = [&](int level) {
    const auto s = detail::tensor_hermite(f.envelope, scaled(spec.cartesian_nodes_per_dim, level), f.cartesian,
                                          spec.parallelism);
    return Sum{s.value, s.l1, s.nodes};
  };
  return escalate(rule, spec, Strategy::tensor_cartesian, 0.0);
}

PhaseFunction neg_log_transform(const PhaseFunction& q) {
  PhaseFunction f = q;
  if (q.cartesian) {
    f.cartesian = [c = q.cartesian](std::span<const double> r) { return neg_x_log_x(c(r)); };
  }
  if (q.radial) {
    f.radial = [c = q.radial](double u) { return neg_x_log_x(c(u)); };
  }
  if (q.polar_reduced) {
    f.polar_reduced = [c = q.polar_reduced](double a, double b, double phi) { return neg_x_log_x(c(a, b, phi)); };
  }
  return f;
}

}  // namespace

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::radial_1d: return "radial-1d";
    case Strategy::polar_2d: return "polar-2d";
    case Strategy::polar_reduced_3d: return "polar-reduced-3d";
    case Strategy::tensor_cartesian: return "tensor-cartesian";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (auto s : {Strategy::radial_1d, Strategy::polar_2d, Strategy::polar_reduced_3d, Strategy::tensor_cartesian}) {
    if (name == to_string(s)) {
      return s;
    }
  }
  if (name == "auto") {
    return std::nullopt;
  }
  throw Error(ErrorCode::invalid_parameter, "unknown quadrature strategy '" + std::string(name) + "'");
}

void QuadratureSpec::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) {
      throw Error(ErrorCode::invalid_parameter, std::string(what) + " must be positive");
    }
  };
  require(radial_nodes > 0, "radial_nodes");
  require(angular_nodes > 0, "angular_nodes");
  require(cartesian_nodes_per_dim > 0, "cartesian_nodes_per_dim");
  require(radial_cutoff > 0.0 && std::isfinite(radial_cutoff), "radial_cutoff");
  require(abs_tol > 0.0, "abs_tol");
  require(rel_tol > 0.0, "rel_tol");
  require(parallelism > 0, "parallelism");
  if (max_escalations < 0) {
    throw Error(ErrorCode::invalid_parameter, "max_escalations must be nonnegative");
  }
}

Strategy select_strategy(const PhaseFunction& f, const QuadratureSpec& spec) {
  const bool one_mode = f.partition == ModePartition{1, 0};
  const bool two_mode = f.partition == ModePartition{1, 1};
  if (spec.strategy) {
    const Strategy s = *spec.strategy;
    const bool ok = (s == Strategy::radial_1d && one_mode && f.radial) || (s == Strategy::polar_2d && one_mode) ||
                    (s == Strategy::polar_reduced_3d && two_mode && f.polar_reduced) ||
                    s == Strategy::tensor_cartesian;
    if (!ok) {
      throw Error(ErrorCode::invalid_parameter, "strategy " + to_string(s) + " does not apply to this function");
    }
    return s;
  }
  if (one_mode && f.radial) {
    return Strategy::radial_1d;
  }
  if (two_mode && f.polar_reduced) {
    return Strategy::polar_reduced_3d;
  }
  return Strategy::tensor_cartesian;
}

IntegralResult integrate(const PhaseFunction& f, const QuadratureSpec& spec) {
  spec.validate();
  switch (select_strategy(f, spec)) {
    case Strategy::radial_1d: return run_radial(f, spec);
    case Strategy::polar_2d: return run_polar_2d(f, spec);
    case Strategy::polar_reduced_3d: return run_polar_reduced(f, spec);
    case Strategy::tensor_cartesian: return run_tensor(f, spec);
  }
  throw Error(ErrorCode::invalid_parameter, "unknown strategy");
}

IntegralResult entropy_functional(const HusimiEvaluator& q, const QuadratureSpec& spec) {
  return integrate(neg_log_transform(q.function()), spec);
}

IntegralResult integrate_line(const std::function<double(double)>& g, const std::vector<double>& breakpoints,
                              double center, double half_width, const QuadratureSpec& spec) {
  spec.validate();
  double lo = center - half_width;
  double hi = center + half_width;
  for (double b : breakpoints) {
    lo = std::min(lo, b - 1.0);
    hi = std::max(hi, b + 1.0);
  }
  for (int i = 0; i < max_cutoff_growths; ++i) {
    const double t = std::max({std::abs(g(lo)), std::abs(g(hi)), std::abs(g(0.95 * lo + 0.05 * center)),
                               std::abs(g(0.95 * hi + 0.05 * center))});
    if (4.0 * t <= 0.1 * spec.abs_tol) {
      break;
    }
    lo = center - cutoff_growth * (center - lo);
    hi = center + cutoff_growth * (hi - center);
  }
  std::vector<double> ends{lo};
  for (double b : breakpoints) {
    if (b > lo && b < hi) {
      ends.push_back(b);
    }
  }
  ends.push_back(hi);
  std::sort(ends.begin(), ends.end());

  auto rule = [&](int level) {
    const int budget = std::max(1, scaled(spec.radial_nodes, level) / panel_order);
    const double length = hi - lo;
    std::vector<Panel> panels;
    for (std::size_t s = 0; s + 1 < ends.size(); ++s) {
      const double a = ends[s], b = ends[s + 1];
      const int k = std::max(1, static_cast<int>(std::lround(budget * (b - a) / length)));
      const bool kink_lo = s > 0;
      const bool kink_hi = s + 2 < ends.size();
      for (int j = 0; j < k; ++j) {
        const double p_lo = a + (b - a) * j / k;
        const double p_hi = a + (b - a) * (j + 1) / k;
        append_graded(panels, {p_lo, p_hi}, kink_lo && j == 0, kink_hi && j == k - 1);
      }
    }
    auto task = [&](int i) {
      std::vector<Node> nodes;
      append_gl(nodes, panels[i], panel_order);
      Sum s;
      for (const auto& n : nodes) {
        const double v = g(n.x);
        s.value += n.w * v;
        s.l1 += n.w * std::abs(v);
      }
      s.nodes = static_cast<long long>(nodes.size());
      return s;
    };
    return reduce(detail::parallel_map<Sum>(static_cast<int>(panels.size()), spec.parallelism, task));
  };
  return escalate(rule, spec, Strategy::radial_1d, hi - center);
}

IntegralResult differential_entropy_integral(const Density1D& density, const QuadratureSpec& spec) {
  auto g = [f = density.f](double x) { return neg_x_log_x(f(x)); };
  return integrate_line(g, density.breakpoints, density.center, density.half_width, spec);
}

}  // namespace wehrl
