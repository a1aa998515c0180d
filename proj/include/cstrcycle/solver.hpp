#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cstrcycle/model.hpp"
#include "cstrcycle/schedule.hpp"

namespace cstrcycle {

struct NewtonConfig {
  double tol = 1e-10;     // residual norm target
  int max_iter = 50;
  double fd_step = 1e-7;  // relative step for the FD Jacobian
  double damping = 0.5;   // backtracking factor
  int max_halvings = 20;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Damped Newton on a 2D residual map with central-difference Jacobian.
// Every accepted step strictly decreases the residual norm; a residual map
// throwing on a trial point counts as a rejected trial. Throws SolverError
// on stagnation or non-convergence. When provided, history receives the
// accepted residual norms, starting with the initial one.
Vec2 newton2(const std::function<Vec2(const Vec2&)>& residual, const Vec2& guess,
             const NewtonConfig& cfg = {}, std::vector<double>* history = nullptr);

enum class SolveMethod { Expansion, Shooting };
const char* method_name(SolveMethod m);

// A converged periodic pair (x0, schedule) with its closure quality and cost.
struct PeriodicSolution {
  Vec2 x0 = Vec2::Zero();
  Schedule schedule;
  double defect = 0.0;  // ||flow_tau(x0) - x0|| on the true dynamics
  double cost = 0.0;    // period-averaged cost around the orbit
  SolveMethod method = SolveMethod::Shooting;
};

// Root of the truncated periodicity system (third-order expansion) for the
// given schedule; the root approximates a periodic point with O(tau^3) error.
Vec2 solve_x0_expansion(const ModelParams& p, const Schedule& s,
                        const NewtonConfig& cfg = {},
                        const Vec2& guess = Vec2::Zero());

// Resolves the fractions left open by the pins against the two linear
// constraints, then solves the expansion system on the resulting schedule.
// pinned uses 0-based segment indices.
std::pair<std::vector<double>, Vec2> solve_alpha_and_x0(
    const ModelParams& p, const StrategyId& id, const ControlBounds& b,
    const std::map<int, double>& pinned, double u1_bar, double tau,
    const NewtonConfig& cfg = {});

// Newton on the period-map defect flow_tau(x) - x, starting from x0_guess
// (typically the expansion root). The returned defect satisfies cfg.tol.
PeriodicSolution shoot_periodic(const ModelParams& p, const Schedule& s,
                                const Vec2& x0_guess,
                                const NewtonConfig& cfg = {},
                                int steps_per_unit_time = 4000);

}  // namespace cstrcycle
