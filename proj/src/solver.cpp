#include "cstrcycle/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "cstrcycle/fliess.hpp"
#include "cstrcycle/sim.hpp"

namespace cstrcycle {

const char* method_name(SolveMethod m) {
  return m == SolveMethod::Expansion ? "expansion" : "shooting";
}

Vec2 newton2(const std::function<Vec2(const Vec2&)>& residual, const Vec2& guess,
             const NewtonConfig& cfg, std::vector<double>* history) {
  if (!(cfg.tol > 0.0) || cfg.max_iter < 1 || !(cfg.damping > 0.0) ||
      !(cfg.damping < 1.0)) {
    throw std::invalid_argument("invalid Newton configuration");
  }

  Vec2 x = guess;
  Vec2 r = residual(x);
  if (history) history->push_back(r.norm());

  for (int it = 0; it < cfg.max_iter; ++it) {
    if (r.norm() <= cfg.tol) return x;

    Mat2 J;
    for (int k = 0; k < 2; ++k) {
      const double h = cfg.fd_step * std::max(1.0, std::abs(x(k)));
      Vec2 e = Vec2::Zero();
      e(k) = h;
      J.col(k) = (residual(x + e) - residual(x - e)) / (2.0 * h);
    }
    const Vec2 dx = J.fullPivLu().solve(-r);
    if (!dx.allFinite()) {
      throw SolverError("Newton step failed: singular Jacobian");
    }

    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= cfg.max_halvings; ++halving) {
      const Vec2 xn = x + lambda * dx;
      Vec2 rn;
      try {
        rn = residual(xn);
      } catch (const std::exception&) {
        lambda *= cfg.damping;  // trial point left the valid domain
        continue;
      }
      if (rn.norm() < r.norm()) {
        x = xn;
        r = rn;
        accepted = true;
        if (history) history->push_back(r.norm());
        break;
      }
      lambda *= cfg.damping;
    }
    if (!accepted) {
      throw SolverError("Newton stalled: no damped step decreases the residual");
    }
  }
  if (r.norm() <= cfg.tol) return x;
  throw SolverError("Newton did not converge: residual " +
                    std::to_string(r.norm()) + " after " +
                    std::to_string(cfg.max_iter) + " iterations");
}

Vec2 solve_x0_expansion(const ModelParams& p, const Schedule& s,
                        const NewtonConfig& cfg, const Vec2& guess) {
  const auto F = [&](const Vec2& x) { return periodicity_residual(p, x, s); };
  return newton2(F, guess, cfg);
}

std::pair<std::vector<double>, Vec2> solve_alpha_and_x0(
    const ModelParams& p, const StrategyId& id, const ControlBounds& b,
    const std::map<int, double>& pinned, double u1_bar, double tau,
    const NewtonConfig& cfg) {
  const Schedule s = strategy_schedule(id, b, tau, pinned, u1_bar);
  return {s.alphas, solve_x0_expansion(p, s, cfg)};
}

PeriodicSolution shoot_periodic(const ModelParams& p, const Schedule& s,
                                const Vec2& x0_guess, const NewtonConfig& cfg,
                                int steps_per_unit_time) {
  const auto F = [&](const Vec2& x) {
    return Vec2(flow(p, x, s, steps_per_unit_time).x - x);
  };
  const Vec2 root = newton2(F, x0_guess, cfg);

  const FlowResult final = flow(p, root, s, steps_per_unit_time);
  PeriodicSolution sol;
  sol.x0 = root;
  sol.schedule = s;
  sol.defect = (final.x - root).norm();
  sol.cost = final.cost_integral / s.tau;
  sol.method = SolveMethod::Shooting;
  return sol;
}

}  // namespace cstrcycle
