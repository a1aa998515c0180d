#pragma once

#include <stdexcept>
#include <vector>

#include "cstrcycle/model.hpp"
#include "cstrcycle/schedule.hpp"

namespace cstrcycle {

struct Sample {
  double t;
  Vec2 x;
  Vec2 u;  // control entering at t; the final sample keeps the last segment's u
};

// Time-sampled solution over one period with running integrals of the cost
// integrand (x1+1)u2 and of u1. Sample times are strictly increasing, start
// at 0, end at tau, and every switching time is a node.
struct Trajectory {
  std::vector<Sample> samples;
  double cost_accumulator = 0.0;
  double u1_accumulator = 0.0;
  double tau = 0.0;
};

// Raised when the flow reaches the domain boundary (x_i <= -1 or non-finite);
// carries the grid time of the offending step.
class DomainExitError : public std::runtime_error {
 public:
  explicit DomainExitError(double t);
  double time;
};

// Classical RK4 on the augmented system (x1, x2, cost integral, u1 integral)
// with the grid built per segment so every switching time is a node; the step
// inside segment j is alpha_j tau / ceil(alpha_j tau * steps_per_unit_time).
// Throws std::invalid_argument for steps_per_unit_time < 100 and
// DomainExitError when the state leaves the domain.
Trajectory integrate(const ModelParams& p, const Vec2& x0, const Schedule& s,
                     int steps_per_unit_time = 4000);

// Period-averaged cost of a complete trajectory; throws std::invalid_argument
// when the trajectory does not cover [0, tau].
double cost(const Trajectory& traj);

// End state and integrals of the same grid as integrate, without samples.
struct FlowResult {
  Vec2 x = Vec2::Zero();
  double cost_integral = 0.0;
  double u1_integral = 0.0;
};
FlowResult flow(const ModelParams& p, const Vec2& x0, const Schedule& s,
                int steps_per_unit_time = 4000);

// Richardson order estimate: end-state errors at h, h/2, h/4 against the h/8
// reference, averaged over the two halvings. The base resolution is coarse on
// purpose so truncation error stays above roundoff. Returns NaN when the
// errors sit at roundoff (no order observable).
double convergence_order_check(const ModelParams& p, const Vec2& x0,
                               const Schedule& s,
                               int base_steps_per_unit_time = 100);

namespace detail {

// One classical RK4 step; exposed for closed-form fixtures in tests.
template <class State, class Rhs>
State rk4_step(const Rhs& f, const State& y, double h) {
  const State k1 = f(y);
  const State k2 = f(y + (h / 2.0) * k1);
  const State k3 = f(y + (h / 2.0) * k2);
  const State k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

}  // namespace cstrcycle
