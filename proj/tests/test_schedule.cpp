#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "cstrcycle/schedule.hpp"
#include "test_util.hpp"

using namespace cstrcycle;

namespace {

// Independent 2x2 solve of {sum a = 1, sum a u1 = u1_bar} for indices i, j
// with the remaining fractions pinned. Cramer's rule, no shared code with the
// library path.
std::pair<double, double> cramer_pair(const std::vector<double>& u1, int i,
                                      int j,
                                      const std::map<int, double>& pinned,
                                      double u1_bar) {
  double mass = 1.0, moment = u1_bar;
  for (const auto& [k, v] : pinned) {
    mass -= v;
    moment -= v * u1[static_cast<std::size_t>(k)];
  }
  const double det = u1[static_cast<std::size_t>(j)] -
                     u1[static_cast<std::size_t>(i)];
  const double ai =
      (mass * u1[static_cast<std::size_t>(j)] - moment) / det;
  return {ai, mass - ai};
}

}  // namespace

TEST_CASE("vertex products for the published box") {
  const VertexSet v = vertices_from_bounds(default_bounds());
  CHECK(v.maxmax(0) == doctest::Approx(3.4225).epsilon(1e-12));
  CHECK(v.maxmax(1) == 1.85);
  CHECK(v.minmin(0) == doctest::Approx(0.0225).epsilon(1e-12));
  CHECK(v.minmin(1) == 0.15);
  CHECK(v.minusmax(0) == doctest::Approx(0.2775).epsilon(1e-12));
  CHECK(v.minusmax(1) == 1.85);
  CHECK(v.plusmin(0) == doctest::Approx(0.2775).epsilon(1e-12));
  CHECK(v.plusmin(1) == 0.15);
  // The symmetric box makes the two mixed products collide.
  CHECK(v.minusmax(0) == doctest::Approx(v.plusmin(0)).epsilon(1e-14));
}

TEST_CASE("vertex products for other boxes") {
  ControlBounds tight;
  tight.v1_min = tight.v1_max = tight.v2_min = tight.v2_max = 1.0;
  CHECK_THROWS_AS(validate_bounds(tight), std::invalid_argument);

  ControlBounds skew;
  skew.v1_min = 0.5;
  skew.v1_max = 1.0;
  skew.v2_min = 1.0;
  skew.v2_max = 2.0;
  const VertexSet v = vertices_from_bounds(skew);
  CHECK(v.maxmax(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(v.minmin(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(v.minusmax(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(v.plusmin(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(v.maxmax(1) == 2.0);
  CHECK(v.plusmin(1) == 1.0);
}

TEST_CASE("bounds validation") {
  CHECK_NOTHROW(validate_bounds(default_bounds()));
  ControlBounds b = default_bounds();
  b.v1_min = -0.1;
  CHECK_THROWS_AS(validate_bounds(b), std::invalid_argument);
  b = default_bounds();
  b.v2_max = 0.9;  // excludes the steady-state value 1
  CHECK_THROWS_AS(validate_bounds(b), std::invalid_argument);
  b = default_bounds();
  b.v1_min = 1.2;
  CHECK_THROWS_AS(validate_bounds(b), std::invalid_argument);
}

TEST_CASE("strategy ids parse and print") {
  CHECK(parse_strategy("C1").tag == 1);
  CHECK(parse_strategy("C1").rotation == 0);
  CHECK(parse_strategy("C7+rot2").tag == 7);
  CHECK(parse_strategy("C7+rot2").rotation == 2);
  CHECK(parse_strategy("C7+rot2").str() == "C7+rot2");
  CHECK(parse_strategy("C3").str() == "C3");
  CHECK_THROWS_AS(parse_strategy("C0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_strategy("C9"), std::invalid_argument);
  CHECK_THROWS_AS(parse_strategy("C2+rot2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_strategy("D1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_strategy(""), std::invalid_argument);
}

TEST_CASE("strategy control sequences") {
  const ControlBounds b = default_bounds();
  const VertexSet v = vertices_from_bounds(b);

  const auto c1 = build_strategy(parse_strategy("C1"), b);
  REQUIRE(c1.size() == 2);
  CHECK((c1[0] - v.maxmax).norm() == 0.0);
  CHECK((c1[1] - v.minmin).norm() == 0.0);

  const auto c1r = build_strategy(parse_strategy("C1+rot1"), b);
  REQUIRE(c1r.size() == 2);
  CHECK((c1r[0] - v.minmin).norm() == 0.0);
  CHECK((c1r[1] - v.maxmax).norm() == 0.0);

  const auto c7 = build_strategy(parse_strategy("C7"), b);
  REQUIRE(c7.size() == 4);
  CHECK((c7[0] - v.maxmax).norm() == 0.0);
  CHECK((c7[1] - v.plusmin).norm() == 0.0);
  CHECK((c7[2] - v.minmin).norm() == 0.0);
  CHECK((c7[3] - v.minusmax).norm() == 0.0);

  const auto c8 = build_strategy(parse_strategy("C8"), b);
  REQUIRE(c8.size() == 4);
  CHECK((c8[0] - v.maxmax).norm() == 0.0);
  CHECK((c8[1] - v.minusmax).norm() == 0.0);
  CHECK((c8[2] - v.minmin).norm() == 0.0);
  CHECK((c8[3] - v.plusmin).norm() == 0.0);
}

TEST_CASE("two-segment family forces both fractions") {
  const ControlBounds b = default_bounds();
  const auto controls = build_strategy(parse_strategy("C1"), b);
  std::vector<double> u1 = {controls[0](0), controls[1](0)};
  const AlphaFamily fam = feasible_alpha_family(u1, 1.0);
  REQUIRE(fam.feasible);
  CHECK_FALSE(fam.degenerate);
  CHECK(fam.free.empty());
  REQUIRE(fam.base.size() == 2);
  const auto [a0, a1] = cramer_pair(u1, 0, 1, {}, 1.0);
  CHECK(fam.base[0] == doctest::Approx(a0).epsilon(1e-14));
  CHECK(fam.base[1] == doctest::Approx(a1).epsilon(1e-14));
  CHECK(fam.base[0] == doctest::Approx(0.2875).epsilon(1e-12));
}

TEST_CASE("three-segment family has one free fraction") {
  const ControlBounds b = default_bounds();
  const auto controls = build_strategy(parse_strategy("C5"), b);
  std::vector<double> u1(controls.size());
  std::transform(controls.begin(), controls.end(), u1.begin(),
                 [](const Vec2& u) { return u(0); });
  const AlphaFamily fam = feasible_alpha_family(u1, 1.0);
  REQUIRE(fam.feasible);
  CHECK_FALSE(fam.degenerate);
  REQUIRE(fam.free.size() == 1);
  CHECK(fam.free[0] == 1);
  CHECK(fam.forced == std::vector<int>{0, 2});
  CHECK(fam.base[0] == doctest::Approx(0.229730).epsilon(1e-5));
  CHECK(fam.base[1] == 0.0);
  REQUIRE(fam.bounds.size() == 1);
  CHECK(fam.bounds[0][0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fam.bounds[0][1] == doctest::Approx(0.770270).epsilon(1e-5));
}

TEST_CASE("pinned three-segment solve reproduces the published fractions") {
  const ControlBounds b = default_bounds();
  const auto controls = build_strategy(parse_strategy("C3"), b);
  std::vector<double> u1(controls.size());
  std::transform(controls.begin(), controls.end(), u1.begin(),
                 [](const Vec2& u) { return u(0); });
  const std::map<int, double> pins = {{1, 1.0 / 12.0}};
  const auto a = solve_alphas(u1, pins, 1.0);
  REQUIRE(a.size() == 3);
  CHECK(std::abs(a[0] - 0.2365) <= 5e-4);
  CHECK(std::abs(a[2] - 0.6802) <= 5e-4);
  CHECK(a[1] == 1.0 / 12.0);
  const auto [e0, e2] = cramer_pair(u1, 0, 2, pins, 1.0);
  CHECK(a[0] == doctest::Approx(e0).epsilon(1e-14));
  CHECK(a[2] == doctest::Approx(e2).epsilon(1e-14));
}

TEST_CASE("solve_alphas matches the Cramer oracle on random pins") {
  const ControlBounds b = default_bounds();
  testutil::Rng rng(0x5eedcafe01u);
  const char* tags[] = {"C3", "C4", "C5", "C6"};
  for (int trial = 0; trial < 50; ++trial) {
    const auto id = parse_strategy(tags[trial % 4]);
    const auto controls = build_strategy(id, b);
    std::vector<double> u1(controls.size());
    std::transform(controls.begin(), controls.end(), u1.begin(),
                   [](const Vec2& u) { return u(0); });
    const std::map<int, double> pins = {{1, rng.uniform(0.0, 0.2)}};
    std::vector<double> a;
    try {
      a = solve_alphas(u1, pins, 1.0);
    } catch (const std::invalid_argument&) {
      continue;  // pin pushed a forced fraction outside [0, 1]
    }
    const auto [e0, e2] = cramer_pair(u1, 0, 2, pins, 1.0);
    CHECK(a[0] == doctest::Approx(e0).epsilon(1e-13));
    CHECK(a[2] == doctest::Approx(e2).epsilon(1e-13));
    double mass = 0.0, moment = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(a[j] >= 0.0);
      mass += a[j];
      moment += a[j] * u1[j];
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(moment == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("solve_alphas input validation") {
  std::vector<double> u1 = {3.4225, 0.0225, 0.2775};
  CHECK_THROWS_AS(solve_alphas(u1, {}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_alphas(u1, {{0, 0.1}, {1, 0.1}, {2, 0.1}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_alphas(u1, {{1, 2.0}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_alphas(u1, {{1, -0.1}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_alphas(u1, {{7, 0.1}}, 1.0), std::invalid_argument);
  // Unpinned pair with equal u1 values is singular.
  std::vector<double> flat = {2.0, 2.0, 0.5};
  CHECK_THROWS_AS(solve_alphas(flat, {{2, 0.1}}, 1.0), std::invalid_argument);
}

TEST_CASE("mean-u1 target outside the hull is infeasible") {
  const AlphaFamily fam = feasible_alpha_family({3.4225, 0.0225}, 4.0);
  CHECK_FALSE(fam.feasible);
  const AlphaFamily low = feasible_alpha_family({3.4225, 0.0225}, 0.01);
  CHECK_FALSE(low.feasible);
  // Two equal segments can only meet their own value.
  const AlphaFamily same = feasible_alpha_family({0.2775, 0.2775}, 1.0);
  CHECK_FALSE(same.feasible);
}

TEST_CASE("hull-boundary target degenerates to an indicator") {
  const std::vector<double> u1 = {3.4225, 0.0225, 0.2775};
  const AlphaFamily fam = feasible_alpha_family(u1, 3.4225);
  REQUIRE(fam.feasible);
  CHECK(fam.degenerate);
  REQUIRE(fam.base.size() == 3);
  CHECK(fam.base[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fam.base[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fam.base[2] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("constraint solutions are equivariant under cyclic relabeling") {
  testutil::Rng rng(0x5eedcafe02u);
  int solved = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<double> u1 = {rng.uniform(1.5, 3.5),
                                    rng.uniform(0.01, 0.5),
                                    rng.uniform(0.2, 0.9)};
    const std::vector<double> rot = {u1[1], u1[2], u1[0]};
    CHECK(feasible_alpha_family(rot, 1.0).feasible ==
          feasible_alpha_family(u1, 1.0).feasible);

    // Pinning the same segment under both labelings solves the same 2x2
    // system, so the fractions follow the labels exactly.
    const double pin = rng.uniform(0.0, 0.3);
    std::vector<double> a;
    try {
      a = solve_alphas(u1, {{1, pin}}, 1.0);
    } catch (const std::invalid_argument&) {
      CHECK_THROWS_AS(solve_alphas(rot, {{0, pin}}, 1.0),
                      std::invalid_argument);
      continue;
    }
    const auto b = solve_alphas(rot, {{0, pin}}, 1.0);
    ++solved;
    for (int j = 0; j < 3; ++j) {
      CHECK(b[static_cast<std::size_t>((j + 2) % 3)] ==
            doctest::Approx(a[static_cast<std::size_t>(j)]).epsilon(1e-12));
    }
  }
  CHECK(solved >= 10);
}

TEST_CASE("schedule assembly validates its inputs") {
  const std::vector<Vec2> two = {Vec2(3.4225, 1.85), Vec2(0.0225, 0.15)};
  const Schedule s = make_schedule(0.5, two, {0.2875, 0.7125});
  CHECK(s.tau == 0.5);
  CHECK(s.size() == 2);
  CHECK(s.switch_time(0) == doctest::Approx(0.2875 * 0.5).epsilon(1e-15));
  CHECK(s.switch_time(1) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(make_schedule(0.0, two, {0.2875, 0.7125}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(-1.0, two, {0.2875, 0.7125}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(0.5, two, {0.2875}), std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(0.5, two, {0.3, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(0.5, two, {-0.1, 1.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(0.5, {}, {}), std::invalid_argument);
}

TEST_CASE("nominal strategy schedules satisfy both constraints") {
  const ControlBounds b = default_bounds();
  const Schedule c1 = strategy_schedule(parse_strategy("C1"), b, 0.5);
  REQUIRE(c1.size() == 2);
  CHECK(c1.alphas[0] == doctest::Approx(0.2875).epsilon(1e-12));

  const Schedule c5 =
      strategy_schedule(parse_strategy("C5"), b, 0.5, {{1, 0.25}});
  REQUIRE(c5.size() == 3);
  CHECK(c5.alphas[1] == 0.25);
  double moment = 0.0;
  for (std::size_t j = 0; j < c5.size(); ++j)
    moment += c5.alphas[j] * c5.controls[j](0);
  CHECK(moment == doctest::Approx(1.0).epsilon(1e-13));

  CHECK_THROWS_AS(strategy_schedule(parse_strategy("C7"), b, 0.5, {{1, 0.3}}),
                  std::invalid_argument);
}

TEST_CASE("strategy enumeration under the published box") {
  const auto infos = enumerate_strategies(default_bounds(), 1.0);
  CHECK(infos.size() == 24);
  int degenerate = 0;
  for (const auto& info : infos) {
    CHECK(info.family.feasible);
    if (info.family.degenerate) ++degenerate;
  }
  CHECK(degenerate == 0);

  CHECK(enumerate_strategies(default_bounds(), 4.0).empty());

  // Mean pinned to the largest vertex: only boundary solutions remain. The
  // base fractions keep both constraints; rotations that lead with the
  // maxmax vertex reduce to its indicator.
  const VertexSet vs = vertices_from_bounds(default_bounds());
  const auto edge = enumerate_strategies(default_bounds(), 3.4225);
  CHECK_FALSE(edge.empty());
  for (const auto& info : edge) {
    CHECK(info.family.degenerate);
    double mass = 0.0;
    double moment = 0.0;
    for (std::size_t j = 0; j < info.vertices.size(); ++j) {
      mass += info.family.base[j];
      moment += info.family.base[j] * vs.get(info.vertices[j])(0);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(moment == doctest::Approx(3.4225).epsilon(1e-10));
    if (info.vertices[0] == Vertex::MaxMax) {
      for (std::size_t j = 0; j < info.vertices.size(); ++j) {
        CHECK(info.family.base[j] ==
              doctest::Approx(j == 0 ? 1.0 : 0.0).epsilon(1e-10));
      }
    }
  }
}
