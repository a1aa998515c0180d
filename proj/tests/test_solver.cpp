#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "cstrcycle/fliess.hpp"
#include "cstrcycle/model.hpp"
#include "cstrcycle/schedule.hpp"
#include "cstrcycle/sim.hpp"
#include "cstrcycle/solver.hpp"
#include "test_util.hpp"

using namespace cstrcycle;

namespace {

Schedule c1_schedule(double tau) {
  return make_schedule(tau, {Vec2(3.4225, 1.85), Vec2(0.0225, 0.15)},
                       {0.2875, 0.7125});
}

Schedule c2_schedule(double tau) {
  const double a1 = alpha1_two_segment(3.4225, 0.2775, 1.0);
  return make_schedule(tau, {Vec2(3.4225, 1.85), Vec2(0.2775, 0.15)},
                       {a1, 1.0 - a1});
}

}  // namespace

TEST_CASE("Newton solves a decoupled quadratic system") {
  const auto F = [](const Vec2& x) {
    return Vec2(x(0) * x(0) - 4.0, x(1) - 1.0);
  };
  std::vector<double> history;
  const Vec2 root = newton2(F, Vec2(1.0, 0.0), NewtonConfig{}, &history);
  CHECK((root - Vec2(2.0, 1.0)).norm() <= 1e-9);
  REQUIRE(history.size() >= 2);
  for (std::size_t k = 1; k < history.size(); ++k) {
    CHECK(history[k] < history[k - 1]);
  }
  CHECK(history.back() <= 1e-10);
}

TEST_CASE("Newton validates its configuration") {
  const auto F = [](const Vec2& x) { return x; };
  NewtonConfig cfg;
  cfg.max_iter = 0;
  CHECK_THROWS_AS(newton2(F, Vec2(1.0, 1.0), cfg), std::invalid_argument);
  cfg = NewtonConfig{};
  cfg.tol = -1.0;
  CHECK_THROWS_AS(newton2(F, Vec2(1.0, 1.0), cfg), std::invalid_argument);
  cfg = NewtonConfig{};
  cfg.damping = 1.5;
  CHECK_THROWS_AS(newton2(F, Vec2(1.0, 1.0), cfg), std::invalid_argument);
}

TEST_CASE("Newton reports non-convergence on a rootless map") {
  const auto F = [](const Vec2& x) {
    return Vec2(x(0) * x(0) + 1.0, x(1));
  };
  NewtonConfig cfg;
  cfg.max_iter = 8;
  CHECK_THROWS_AS(newton2(F, Vec2(3.0, 1.0), cfg), SolverError);
}

TEST_CASE("expansion root of the resting cycle is the fixed point") {
  const ModelParams p = default_params();
  const Schedule rest = make_schedule(0.5, {Vec2(1.0, 1.0)}, {1.0});
  const Vec2 x0 = solve_x0_expansion(p, rest, NewtonConfig{},
                                     Vec2(0.01, 0.01));
  CHECK(x0.norm() <= 1e-8);
}

TEST_CASE("expansion roots of the published two-segment cycles") {
  const ModelParams p = default_params();
  const Vec2 r1 = solve_x0_expansion(p, c1_schedule(0.5));
  CHECK(r1(0) == doctest::Approx(-0.2112420331).epsilon(1e-8));
  CHECK(r1(1) == doctest::Approx(0.0204843781).epsilon(1e-6));
  CHECK(periodicity_residual(p, r1, c1_schedule(0.5)).norm() <= 1e-10);

  const Vec2 r2 = solve_x0_expansion(p, c2_schedule(0.5));
  CHECK(r2(0) == doctest::Approx(-0.2383815212).epsilon(1e-8));
  CHECK(r2(1) == doctest::Approx(0.0314624036).epsilon(1e-6));
}

TEST_CASE("expansion root approaches the true orbit as the period shrinks") {
  const ModelParams p = default_params();
  std::vector<double> lt, lg;
  for (double tau : {0.0625, 0.125, 0.25, 0.5}) {
    const Schedule s = c1_schedule(tau);
    const Vec2 xe = solve_x0_expansion(p, s);
    const PeriodicSolution sol = shoot_periodic(p, s, xe);
    lt.push_back(std::log(tau));
    lg.push_back(std::log((xe - sol.x0).norm()));
  }
  double mt = 0.0, mg = 0.0;
  for (std::size_t k = 0; k < lt.size(); ++k) {
    mt += lt[k];
    mg += lg[k];
  }
  mt /= static_cast<double>(lt.size());
  mg /= static_cast<double>(lg.size());
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < lt.size(); ++k) {
    num += (lt[k] - mt) * (lg[k] - mg);
    den += (lt[k] - mt) * (lt[k] - mt);
  }
  CHECK(num / den >= 2.0);
}

TEST_CASE("shooting closes the published single-switch orbit") {
  const ModelParams p = default_params();
  const Schedule s = c1_schedule(0.5);
  const Vec2 guess = solve_x0_expansion(p, s);
  const PeriodicSolution sol = shoot_periodic(p, s, guess);
  CHECK(sol.defect <= 1e-9);
  CHECK((sol.x0 - Vec2(-0.307, 0.0219)).norm() <= 0.02);
  CHECK(std::abs(sol.cost - 0.6293) <= 0.01);
  CHECK(sol.method == SolveMethod::Shooting);
  CHECK(sol.schedule.tau == 0.5);

  // Closure on the true dynamics, re-checked outside the solver.
  const Vec2 xturn = flow(p, sol.x0, s).x;
  CHECK((xturn - sol.x0).norm() <= 1e-9);
}

TEST_CASE("shooting from near the fixed point lands on it") {
  const ModelParams p = default_params();
  const Schedule rest = make_schedule(0.5, {Vec2(1.0, 1.0)}, {1.0});
  const PeriodicSolution sol = shoot_periodic(p, rest, Vec2(0.05, 0.01));
  CHECK(sol.x0.norm() <= 1e-9);
  CHECK(std::abs(sol.cost - 1.0) <= 1e-8);
}

TEST_CASE("shooting is deterministic") {
  const ModelParams p = default_params();
  const Schedule s = c2_schedule(0.5);
  const PeriodicSolution a = shoot_periodic(p, s, Vec2::Zero());
  const PeriodicSolution b = shoot_periodic(p, s, Vec2::Zero());
  CHECK(a.x0(0) == b.x0(0));
  CHECK(a.x0(1) == b.x0(1));
  CHECK(a.defect == b.defect);
  CHECK(a.cost == b.cost);
}

TEST_CASE("joint fraction-and-state solve resolves the pins") {
  const ModelParams p = default_params();
  const ControlBounds b = default_bounds();

  const auto [a5, x5] = solve_alpha_and_x0(p, parse_strategy("C5"), b,
                                           {{1, 0.25}}, 1.0, 0.5);
  REQUIRE(a5.size() == 3);
  CHECK(a5[0] == doctest::Approx(0.7225 / 3.145).epsilon(1e-13));
  CHECK(a5[1] == 0.25);
  CHECK(a5[2] == doctest::Approx(0.75 - 0.7225 / 3.145).epsilon(1e-13));
  CHECK(std::isfinite(x5(0)));

  const auto [a7, x7] = solve_alpha_and_x0(
      p, parse_strategy("C7"), b, {{1, 5.0 / 12.0}, {2, 1.0 / 12.0}}, 1.0,
      0.5);
  REQUIRE(a7.size() == 4);
  CHECK(a7[0] == doctest::Approx(0.2364864864864865).epsilon(1e-12));
  CHECK(a7[3] == doctest::Approx(0.2635135135135135).epsilon(1e-12));

  // The returned state is a root of the truncated periodicity system.
  const auto verts = build_strategy(parse_strategy("C7"), b);
  const Schedule s7 = make_schedule(0.5, verts, a7);
  CHECK(periodicity_residual(p, x7, s7).norm() <= 1e-9);

  CHECK_THROWS_AS(solve_alpha_and_x0(p, parse_strategy("C7"), b,
                                     {{1, 0.5}, {2, 0.7}}, 1.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("joint solve with no pins covers the two-segment cycles") {
  const ModelParams p = default_params();
  const auto [a1, x1] = solve_alpha_and_x0(p, parse_strategy("C1"),
                                           default_bounds(), {}, 1.0, 0.5);
  REQUIRE(a1.size() == 2);
  CHECK(a1[0] == doctest::Approx(0.2875).epsilon(1e-12));
  CHECK(x1(0) == doctest::Approx(-0.2112420331).epsilon(1e-6));
}
