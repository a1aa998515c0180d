#include "cstrcycle/schedule.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cstrcycle {

namespace {

constexpr double kSumTol = 1e-12;

// Nominal vertex orders of the eight cycle shapes.
const std::vector<Vertex>& base_order(int tag) {
  using V = Vertex;
  static const std::vector<Vertex> orders[8] = {
      {V::MaxMax, V::MinMin},
      {V::MaxMax, V::PlusMin},
      {V::MaxMax, V::MinMin, V::MinusMax},
      {V::MaxMax, V::MinMin, V::PlusMin},
      {V::MaxMax, V::PlusMin, V::MinusMax},
      {V::MaxMax, V::MinusMax, V::PlusMin},
      {V::MaxMax, V::PlusMin, V::MinMin, V::MinusMax},
      {V::MaxMax, V::MinusMax, V::MinMin, V::PlusMin},
  };
  if (tag < 1 || tag > 8) throw std::invalid_argument("strategy tag must be 1..8");
  return orders[tag - 1];
}

}  // namespace

void validate_bounds(const ControlBounds& b) {
  const bool ok1 = b.v1_min > 0.0 && b.v1_min <= 1.0 && 1.0 <= b.v1_max;
  const bool ok2 = b.v2_min > 0.0 && b.v2_min <= 1.0 && 1.0 <= b.v2_max;
  if (!(ok1 && ok2 && b.v1_min < b.v1_max && b.v2_min < b.v2_max)) {
    throw std::invalid_argument(
        "control bounds must satisfy 0 < min <= 1 <= max and min < max per "
        "channel");
  }
}

ControlBounds default_bounds() { return ControlBounds{}; }

Vec2 VertexSet::get(Vertex v) const {
  switch (v) {
    case Vertex::MaxMax: return maxmax;
    case Vertex::MinMin: return minmin;
    case Vertex::MinusMax: return minusmax;
    case Vertex::PlusMin: return plusmin;
  }
  throw std::invalid_argument("unknown vertex");
}

VertexSet vertices_from_bounds(const ControlBounds& b) {
  validate_bounds(b);
  VertexSet s;
  s.maxmax = Vec2(b.v1_max * b.v2_max, b.v2_max);
  s.minmin = Vec2(b.v1_min * b.v2_min, b.v2_min);
  s.minusmax = Vec2(b.v1_min * b.v2_max, b.v2_max);
  s.plusmin = Vec2(b.v1_max * b.v2_min, b.v2_min);
  return s;
}

const char* vertex_name(Vertex v) {
  switch (v) {
    case Vertex::MaxMax: return "max/max";
    case Vertex::MinMin: return "min/min";
    case Vertex::MinusMax: return "-/max";
    case Vertex::PlusMin: return "+/min";
  }
  return "?";
}

double Schedule::switch_time(std::size_t j) const {
  if (j >= alphas.size()) throw std::out_of_range("segment index");
  double s = 0.0;
  for (std::size_t i = 0; i <= j; ++i) s += alphas[i];
  return s * tau;
}

Schedule make_schedule(double tau, const std::vector<Vec2>& controls,
                       const std::vector<double>& alphas) {
  if (!(tau > 0.0)) throw std::invalid_argument("period must be positive");
  if (controls.size() != alphas.size() || controls.empty()) {
    throw std::invalid_argument("controls and fractions must align and be nonempty");
  }
  double sum = 0.0;
  for (double a : alphas) {
    if (!(a >= 0.0)) throw std::invalid_argument("fractions must be nonnegative");
    sum += a;
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    throw std::invalid_argument("fractions must sum to one");
  }
  Schedule s;
  s.tau = tau;
  s.controls = controls;
  s.alphas = alphas;
  return s;
}

std::string StrategyId::str() const {
  std::string s = "C" + std::to_string(tag);
  if (rotation != 0) s += "+rot" + std::to_string(rotation);
  return s;
}

StrategyId parse_strategy(const std::string& s) {
  const auto bad = [&] {
    return std::invalid_argument("unknown strategy '" + s +
                                 "' (expected C1..C8, optionally +rotK)");
  };
  if (s.size() < 2 || s[0] != 'C' || !std::isdigit(static_cast<unsigned char>(s[1]))) {
    throw bad();
  }
  StrategyId id;
  id.tag = s[1] - '0';
  if (id.tag < 1 || id.tag > 8) throw bad();
  if (s.size() == 2) return id;
  const std::string rest = s.substr(2);
  if (rest.rfind("+rot", 0) != 0 || rest.size() == 4) throw bad();
  int rot = 0;
  for (std::size_t i = 4; i < rest.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(rest[i]))) throw bad();
    rot = rot * 10 + (rest[i] - '0');
    if (rot > 3) throw bad();
  }
  const int n = static_cast<int>(base_order(id.tag).size());
  if (rot >= n) throw bad();
  id.rotation = rot;
  return id;
}

std::vector<Vertex> strategy_vertices(const StrategyId& id) {
  std::vector<Vertex> v = base_order(id.tag);
  const int n = static_cast<int>(v.size());
  if (id.rotation < 0 || id.rotation >= n) {
    throw std::invalid_argument("rotation out of range for strategy");
  }
  std::rotate(v.begin(), v.begin() + id.rotation, v.end());
  return v;
}

std::vector<Vec2> build_strategy(const StrategyId& id, const ControlBounds& b) {
  const VertexSet set = vertices_from_bounds(b);
  std::vector<Vec2> out;
  for (Vertex v : strategy_vertices(id)) out.push_back(set.get(v));
  return out;
}

AlphaFamily feasible_alpha_family(const std::vector<double>& u1_values,
                                  double u1_bar) {
  const int n = static_cast<int>(u1_values.size());
  if (n < 1 || n > 4) throw std::invalid_argument("1 to 4 segments supported");

  AlphaFamily fam;
  const double lo = *std::min_element(u1_values.begin(), u1_values.end());
  const double hi = *std::max_element(u1_values.begin(), u1_values.end());
  const double span_tol = 1e-12 * std::max(1.0, std::abs(u1_bar));
  if (u1_bar < lo - span_tol || u1_bar > hi + span_tol) {
    return fam;  // constraint unreachable
  }
  fam.feasible = true;
  fam.degenerate = std::abs(u1_bar - lo) <= span_tol ||
                   std::abs(u1_bar - hi) <= span_tol || n == 1;

  // Second forced index: the last segment whose u1 differs from u1[0].
  int partner = -1;
  for (int i = n - 1; i >= 1; --i) {
    if (u1_values[i] != u1_values[0]) {
      partner = i;
      break;
    }
  }
  if (partner < 0) {
    // All u1 equal: the average is fixed, only the total mass is constrained.
    fam.forced = {0};
    for (int i = 1; i < n; ++i) fam.free.push_back(i);
    fam.base.assign(n, 0.0);
    fam.base[0] = 1.0;
    fam.bounds.assign(fam.free.size(), {0.0, 1.0});
    fam.degenerate = fam.degenerate || n == 1;
    return fam;
  }

  fam.forced = {0, partner};
  for (int i = 1; i < n; ++i) {
    if (i != partner) fam.free.push_back(i);
  }

  const double ua = u1_values[0];
  const double ub = u1_values[partner];
  // With free fractions s_i: a0 + ap = 1 - sum(s_i) and
  // ua a0 + ub ap = u1_bar - sum(s_i u1_i).
  const auto solve_pair = [&](double mass, double moment) {
    const double a0 = (moment - ub * mass) / (ua - ub);
    return std::array<double, 2>{a0, mass - a0};
  };
  const auto base_pair = solve_pair(1.0, u1_bar);
  fam.base.assign(n, 0.0);
  fam.base[0] = base_pair[0];
  fam.base[partner] = base_pair[1];

  // Slice interval for each free index with the others at zero: s must keep
  // both forced fractions nonnegative.
  for (int i : fam.free) {
    const double ui = u1_values[i];
    // a0(s) = base0 - s (ub - ui)/(ub - ua), ap(s) = basep - s (ui - ua)/(ub - ua)
    const double d0 = (ub - ui) / (ub - ua);
    const double dp = (ui - ua) / (ub - ua);
    double smax = 1.0;
    if (d0 > 0.0) smax = std::min(smax, fam.base[0] / d0);
    if (dp > 0.0) smax = std::min(smax, fam.base[partner] / dp);
    fam.bounds.push_back({0.0, std::max(0.0, smax)});
  }
  return fam;
}

std::vector<double> solve_alphas(const std::vector<double>& u1_values,
                                 const std::map<int, double>& pinned,
                                 double u1_bar) {
  const int n = static_cast<int>(u1_values.size());
  if (n < 1 || n > 4) throw std::invalid_argument("1 to 4 segments supported");
  for (const auto& [i, v] : pinned) {
    if (i < 0 || i >= n) throw std::invalid_argument("pinned index out of range");
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("pinned fraction must lie in [0, 1]");
    }
  }

  std::vector<int> unpinned;
  for (int i = 0; i < n; ++i) {
    if (!pinned.count(i)) unpinned.push_back(i);
  }

  double mass = 1.0;
  double moment = u1_bar;
  for (const auto& [i, v] : pinned) {
    mass -= v;
    moment -= v * u1_values[i];
  }

  std::vector<double> alphas(n, 0.0);
  for (const auto& [i, v] : pinned) alphas[i] = v;

  const double tol = 1e-9;
  if (unpinned.empty()) {
    if (std::abs(mass) > tol || std::abs(moment) > tol) {
      throw std::invalid_argument("pinned fractions violate the constraints");
    }
    return alphas;
  }
  if (unpinned.size() == 1) {
    const int i = unpinned[0];
    if (std::abs(moment - mass * u1_values[i]) > tol) {
      throw std::invalid_argument("pins are inconsistent with the u1 average");
    }
    alphas[i] = mass;
  } else if (unpinned.size() == 2) {
    const double ua = u1_values[unpinned[0]];
    const double ub = u1_values[unpinned[1]];
    if (ua == ub) {
      throw std::invalid_argument(
          "the two unpinned segments share one u1 value; the split is "
          "undetermined, pin one of them");
    }
    alphas[unpinned[0]] = (moment - ub * mass) / (ua - ub);
    alphas[unpinned[1]] = mass - alphas[unpinned[0]];
  } else {
    throw std::invalid_argument(
        "underdetermined: pin all but two fractions (" +
        std::to_string(unpinned.size()) + " remain free)");
  }

  // Roundoff-sized boundary violations snap to the boundary; anything larger
  // means the pins are infeasible.
  const double snap = 1e-12;
  for (double& a : alphas) {
    if (a < -snap || a > 1.0 + snap) {
      throw std::invalid_argument(
          "constraints force a fraction outside [0, 1]; infeasible pins");
    }
    a = std::min(1.0, std::max(0.0, a));
  }
  return alphas;
}

Schedule strategy_schedule(const StrategyId& id, const ControlBounds& b,
                           double tau, const std::map<int, double>& pinned,
                           double u1_bar) {
  const std::vector<Vec2> controls = build_strategy(id, b);
  std::vector<double> u1;
  for (const Vec2& u : controls) u1.push_back(u(0));
  return make_schedule(tau, controls, solve_alphas(u1, pinned, u1_bar));
}

std::vector<StrategyInfo> enumerate_strategies(const ControlBounds& b,
                                               double u1_bar) {
  const VertexSet set = vertices_from_bounds(b);
  std::vector<StrategyInfo> out;
  for (int tag = 1; tag <= 8; ++tag) {
    const int n = static_cast<int>(base_order(tag).size());
    for (int rot = 0; rot < n; ++rot) {
      StrategyInfo info;
      info.id = StrategyId{tag, rot};
      info.vertices = strategy_vertices(info.id);
      std::vector<double> u1;
      for (Vertex v : info.vertices) u1.push_back(set.get(v)(0));
      info.family = feasible_alpha_family(u1, u1_bar);
      if (info.family.feasible) out.push_back(std::move(info));
    }
  }
  return out;
}

}  // namespace cstrcycle
