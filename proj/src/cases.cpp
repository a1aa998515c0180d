#include "cstrcycle/cases.hpp"

#include <cmath>
#include <limits>

#include "cstrcycle/sim.hpp"

namespace cstrcycle {

namespace {

using V = Vertex;

constexpr double kTwelfth = 1.0 / 12.0;

}  // namespace

std::vector<BenchmarkCase> table1_cases() {
  std::vector<BenchmarkCase> rows;
  const auto add = [&](std::string label, std::string strategy,
                       std::vector<Vertex> order, std::map<int, double> pinned,
                       double x01, double x02, double J) {
    rows.push_back({std::move(label), std::move(strategy), std::move(order),
                    std::move(pinned), Vec2(x01, x02), J});
  };

  add("C1", "C1", {V::MaxMax, V::MinMin}, {}, -0.307, 0.0219, 0.6293);
  add("C2", "C2", {V::MaxMax, V::PlusMin}, {}, -0.3259, 0.0325, 0.4883);
  add("C3", "C3", {V::MaxMax, V::PlusMin, V::MinusMax}, {{2, kTwelfth}},
      -0.2413, 0.017, 0.653);
  add("C4", "C4", {V::MaxMax, V::MinusMax, V::PlusMin}, {{2, 0.5}},
      -0.198, 0.00078, 1.055);
  const double x5[6][2] = {{-0.3305, 0.0312}, {-0.3326, 0.0299},
                           {-0.332, 0.0287},  {-0.3306, 0.0273},
                           {-0.3269, 0.026},  {-0.323, 0.0249}};
  const double J5[6] = {0.502, 0.5169, 0.5326, 0.5488, 0.5659, 0.5828};
  for (int k = 1; k <= 6; ++k) {
    add("C5r" + std::to_string(k), "C5", {V::MaxMax, V::PlusMin, V::MinMin},
        {{2, k / 12.0}}, x5[k - 1][0], x5[k - 1][1], J5[k - 1]);
  }
  add("C6", "C6", {V::MaxMax, V::MinusMax, V::MinMin}, {{2, 0.5}},
      -0.271, 0.00076, 1.0591);
  const std::vector<Vertex> c7 = {V::MaxMax, V::PlusMin, V::MinMin, V::MinusMax};
  add("C7r1", "C7", c7, {{2, kTwelfth}, {3, 5.0 / 12.0}}, -0.329, -0.0056,
      1.1259);
  add("C7r2", "C7", c7, {{2, 5.0 / 12.0}, {3, kTwelfth}}, -0.263, 0.0133,
      0.7179);
  add("C7eq", "C7", c7, {{1, 0.25}, {2, 0.25}}, -0.266, 0.00066, 0.9465);
  const std::vector<Vertex> c8 = {V::MaxMax, V::MinusMax, V::MinMin, V::PlusMin};
  add("C8r1", "C8", c8, {{2, kTwelfth}, {3, 5.0 / 12.0}}, -0.2077, 0.0007,
      1.057);
  add("C8r2", "C8", c8, {{2, 5.0 / 12.0}, {3, kTwelfth}}, -0.256, 0.0007,
      1.0604);
  add("C8eq", "C8", c8, {{1, 0.25}, {2, 0.25}}, -0.228, 0.00067, 1.0616);
  return rows;
}

std::vector<double> case_alphas(const BenchmarkCase& c, const ControlBounds& b,
                                double u1_bar) {
  const VertexSet set = vertices_from_bounds(b);
  std::vector<double> u1;
  for (Vertex v : c.order) u1.push_back(set.get(v)(0));
  return solve_alphas(u1, c.pinned, u1_bar);
}

Schedule case_schedule(const BenchmarkCase& c, double tau,
                       const ControlBounds& b, double u1_bar) {
  const VertexSet set = vertices_from_bounds(b);
  std::vector<Vec2> controls;
  for (Vertex v : c.order) controls.push_back(set.get(v));
  return make_schedule(tau, controls, case_alphas(c, b, u1_bar));
}

CaseResult run_case(const ModelParams& p, const BenchmarkCase& c, double tau,
                    int steps_per_unit_time, const NewtonConfig& cfg,
                    const ControlBounds& b, double u1_bar) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  CaseResult res;
  res.label = c.label;
  res.defect = kNaN;
  res.cost = kNaN;
  res.iso_average = kNaN;

  Schedule s;
  try {
    s = case_schedule(c, tau, b, u1_bar);
  } catch (const std::exception& e) {
    res.status = std::string("infeasible: ") + e.what();
    return res;
  }
  res.alphas = s.alphas;

  Vec2 guess = Vec2::Zero();
  try {
    res.x0_expansion = solve_x0_expansion(p, s, cfg);
    res.expansion_ok = true;
    guess = res.x0_expansion;
  } catch (const SolverError&) {
    // Shooting still gets a try from the origin; all published orbits sit
    // near the steady state.
  }

  try {
    const PeriodicSolution sol =
        shoot_periodic(p, s, guess, cfg, steps_per_unit_time);
    res.x0 = sol.x0;
    res.defect = sol.defect;
    res.cost = sol.cost;
    res.iso_average =
        flow(p, sol.x0, s, steps_per_unit_time).u1_integral / s.tau;
  } catch (const std::exception& e) {
    res.status = std::string("shooting failed: ") + e.what();
  }
  return res;
}

std::vector<CaseResult> run_table1(const ModelParams& p, double tau,
                                   int steps_per_unit_time,
                                   const ControlBounds& b, double u1_bar) {
  std::vector<CaseResult> out;
  for (const BenchmarkCase& c : table1_cases()) {
    out.push_back(run_case(p, c, tau, steps_per_unit_time, NewtonConfig{}, b,
                           u1_bar));
  }
  return out;
}

SweepFamily benchmark_family(const std::string& tag) {
  if (tag == "C1") return {"C1", {V::MaxMax, V::MinMin}, -1};
  if (tag == "C2") return {"C2", {V::MaxMax, V::PlusMin}, -1};
  if (tag == "C3") return {"C3", {V::MaxMax, V::PlusMin, V::MinusMax}, 2};
  if (tag == "C4") return {"C4", {V::MaxMax, V::MinusMax, V::PlusMin}, 2};
  if (tag == "C5") return {"C5", {V::MaxMax, V::PlusMin, V::MinMin}, 2};
  if (tag == "C6") return {"C6", {V::MaxMax, V::MinusMax, V::MinMin}, 2};
  if (tag == "C7")
    return {"C7", {V::MaxMax, V::PlusMin, V::MinMin, V::MinusMax}, 2};
  if (tag == "C8")
    return {"C8", {V::MaxMax, V::MinusMax, V::MinMin, V::PlusMin}, 2};
  throw std::invalid_argument("unknown cycle shape '" + tag + "' (C1..C8)");
}

}  // namespace cstrcycle
