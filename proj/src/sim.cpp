#include "cstrcycle/sim.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cstrcycle {

namespace {

using Vec4 = Eigen::Vector4d;

// Augmented right-hand side with the parameter-constant pieces hoisted out.
// Stage points are evaluated without domain checks so trial steps may probe
// outside; the post-step node check catches genuine exits.
struct AugmentedRhs {
  const ModelParams& p;
  double g1x;      // 1 + k1 exp(-gamma)
  double g2y;      // k2 exp(-gamma) + St - delta
  double u1, u2;

  AugmentedRhs(const ModelParams& params, const Vec2& u)
      : p(params),
        g1x(1.0 + params.k1 * std::exp(-params.gamma)),
        g2y(params.k2 * std::exp(-params.gamma) + params.St - params.delta),
        u1(u(0)),
        u2(u(1)) {}

  Vec4 operator()(const Vec4& y) const {
    const double x1 = y(0);
    const double x2 = y(1);
    const double e = std::exp(-p.gamma / (1.0 + x2));
    const double r =
        p.n_bar == 1.0 ? (1.0 + x1) * e : std::pow(1.0 + x1, p.n_bar) * e;
    Vec4 dy;
    dy(0) = -p.k1 * r + u1 * g1x + u2 * (-1.0 - x1);
    dy(1) = p.delta - p.St * (1.0 + x2) - p.k2 * r + u2 * (g2y - x2);
    dy(2) = (x1 + 1.0) * u2;
    dy(3) = u1;
    return dy;
  }
};

// Shared grid walk for integrate and flow. The sink, when present, receives
// every node exactly once (switch nodes belong to the entered segment).
FlowResult run_grid(const ModelParams& p, const Vec2& x0, const Schedule& s,
                    int spu, Trajectory* sink) {
  if (spu < 100) {
    throw std::invalid_argument("steps_per_unit_time must be at least 100");
  }
  if (!in_domain(x0)) {
    throw std::domain_error("initial state outside physical domain");
  }

  Vec4 y(x0(0), x0(1), 0.0, 0.0);
  double t_base = 0.0;

  if (sink) {
    sink->tau = s.tau;
    // First segment with mass provides the control label of the start node.
    Vec2 u0 = s.controls.front();
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s.alphas[j] > 0.0) {
        u0 = s.controls[j];
        break;
      }
    }
    sink->samples.push_back({0.0, x0, u0});
  }

  // Trailing zero-mass segments must not steal the exact endpoint.
  std::size_t last = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s.alphas[j] > 0.0) last = j;
  }
  double elapsed = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double d = s.alphas[j] * s.tau;
    elapsed += d;
    if (d == 0.0) continue;
    const double seg_end = (j == last) ? s.tau : elapsed;

    const int n = std::max(1, static_cast<int>(std::ceil(d * spu)));
    const double h = d / n;
    const AugmentedRhs rhs(p, s.controls[j]);
    // The control labelling a node is the one acting after it; the final
    // node keeps the last segment's control.
    const Vec2 u = s.controls[j];

    for (int i = 1; i <= n; ++i) {
      y = detail::rk4_step(rhs, y, h);
      const double t_node = (i == n) ? seg_end : t_base + i * h;
      const Vec2 x(y(0), y(1));
      if (!in_domain(x)) throw DomainExitError(t_node);
      if (sink) {
        Vec2 u_label = u;
        if (i == n && j != last) {
          for (std::size_t k = j + 1; k < s.size(); ++k) {
            if (s.alphas[k] > 0.0) {
              u_label = s.controls[k];
              break;
            }
          }
        }
        sink->samples.push_back({t_node, x, u_label});
      }
    }
    t_base = seg_end;
  }

  FlowResult out;
  out.x = Vec2(y(0), y(1));
  out.cost_integral = y(2);
  out.u1_integral = y(3);
  if (sink) {
    sink->cost_accumulator = y(2);
    sink->u1_accumulator = y(3);
  }
  return out;
}

}  // namespace

DomainExitError::DomainExitError(double t)
    : std::runtime_error("flow left the physical domain at t = " +
                         std::to_string(t)),
      time(t) {}

Trajectory integrate(const ModelParams& p, const Vec2& x0, const Schedule& s,
                     int steps_per_unit_time) {
  Trajectory traj;
  run_grid(p, x0, s, steps_per_unit_time, &traj);
  return traj;
}

double cost(const Trajectory& traj) {
  if (traj.samples.empty() || !(traj.tau > 0.0)) {
    throw std::invalid_argument("cost of an empty or zero-duration trajectory");
  }
  const double closure = std::abs(traj.samples.back().t - traj.tau);
  if (traj.samples.front().t != 0.0 ||
      closure > 1e-12 * std::max(1.0, traj.tau)) {
    throw std::invalid_argument("trajectory does not cover one full period");
  }
  return traj.cost_accumulator / traj.tau;
}

FlowResult flow(const ModelParams& p, const Vec2& x0, const Schedule& s,
                int steps_per_unit_time) {
  return run_grid(p, x0, s, steps_per_unit_time, nullptr);
}

double convergence_order_check(const ModelParams& p, const Vec2& x0,
                               const Schedule& s, int base_steps_per_unit_time) {
  const int b = base_steps_per_unit_time;
  const Vec2 ref = flow(p, x0, s, 8 * b).x;
  const double e1 = (flow(p, x0, s, b).x - ref).norm();
  const double e2 = (flow(p, x0, s, 2 * b).x - ref).norm();
  const double e4 = (flow(p, x0, s, 4 * b).x - ref).norm();
  if (e1 < 1e-14 || e2 < 1e-14 || e4 < 1e-14) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return 0.5 * (std::log2(e1 / e2) + std::log2(e2 / e4));
}

}  // namespace cstrcycle
