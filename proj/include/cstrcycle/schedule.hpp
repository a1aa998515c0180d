#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cstrcycle/model.hpp"

namespace cstrcycle {

// Admissible box for the physical inputs: v1 scales inlet concentration,
// v2 scales flow rate. The control pair seen by the dynamics is
// u = (v1 v2, v2). Bounds must straddle the steady state:
// 0 < min <= 1 <= max per channel.
struct ControlBounds {
  double v1_min = 0.15;
  double v1_max = 1.85;
  double v2_min = 0.15;
  double v2_max = 1.85;
};

// Throws std::invalid_argument when bounds are degenerate or exclude 1.
void validate_bounds(const ControlBounds& b);
ControlBounds default_bounds();

// The four products of extreme inlet-concentration and flow values that a
// bang-bang cycle switches between. The first component is the product bound
// seen by the reaction term, the second the flow value.
enum class Vertex { MaxMax, MinMin, MinusMax, PlusMin };

constexpr std::array<Vertex, 4> kAllVertices = {
    Vertex::MaxMax, Vertex::MinMin, Vertex::MinusMax, Vertex::PlusMin};

struct VertexSet {
  Vec2 maxmax;    // (c+ f+, f+)
  Vec2 minmin;    // (c- f-, f-)
  Vec2 minusmax;  // (c- f+, f+)
  Vec2 plusmin;   // (c+ f-, f-)
  Vec2 get(Vertex v) const;
};

VertexSet vertices_from_bounds(const ControlBounds& b);
const char* vertex_name(Vertex v);

// One period of a bang-bang cycle: segment j holds control u(j) for duration
// alpha(j) * tau. Fractions are nonnegative and sum to one within 1e-12.
struct Schedule {
  double tau = 1.0;
  std::vector<Vec2> controls;
  std::vector<double> alphas;

  std::size_t size() const { return controls.size(); }
  double switch_time(std::size_t j) const;  // end of segment j, in [0, tau]
};

// Validates and assembles a schedule. Throws std::invalid_argument on
// tau <= 0, size mismatch, negative fractions, or sum(alpha) != 1.
Schedule make_schedule(double tau, const std::vector<Vec2>& controls,
                       const std::vector<double>& alphas);

// Named cycle shapes C1..C8 with optional cyclic rotation of the vertex
// order ("C7+rot2" starts C7 at its third vertex).
struct StrategyId {
  int tag = 1;       // 1..8
  int rotation = 0;  // 0..N-1

  std::string str() const;
};
StrategyId parse_strategy(const std::string& s);  // throws on bad input

// Vertex order for a strategy, rotation applied.
std::vector<Vertex> strategy_vertices(const StrategyId& id);

// The ordered control values the strategy switches between.
std::vector<Vec2> build_strategy(const StrategyId& id, const ControlBounds& b);

// Analysis of the constraint pair {sum alpha_j = 1, sum alpha_j u1_j = u1_bar}
// on a given vertex order.
struct AlphaFamily {
  bool feasible = false;
  bool degenerate = false;      // solutions exist only on the simplex boundary
  std::vector<int> forced;      // the two indices solved from the constraints
  std::vector<int> free;        // indices the caller may pin, ascending
  // Admissible interval for each free fraction with the other free ones zero.
  std::vector<std::array<double, 2>> bounds;
  // Fractions with every free index at zero (meaningful when feasible).
  std::vector<double> base;
};

// Resolves the two constraints on the segment u1 values. Feasible iff u1_bar
// lies in the closed hull of the u1 values; hull-boundary solutions are
// flagged degenerate. The forced pair is index 0 and the last index whose u1
// differs from u1[0]; remaining indices are free.
AlphaFamily feasible_alpha_family(const std::vector<double>& u1_values,
                                  double u1_bar = 1.0);

// Solves the two constraints for the two unpinned fractions given pins on the
// others (0-based indices). Exactly two indices must remain unpinned and their
// u1 values must differ. Throws std::invalid_argument when the pins make the
// system singular or push any fraction outside [0, 1].
std::vector<double> solve_alphas(const std::vector<double>& u1_values,
                                 const std::map<int, double>& pinned,
                                 double u1_bar = 1.0);

// Nominal schedule for a strategy: controls from build_strategy, fractions
// from solve_alphas. N=2 strategies take no pins; N=3 one; N=4 two.
Schedule strategy_schedule(const StrategyId& id, const ControlBounds& b,
                           double tau,
                           const std::map<int, double>& pinned = {},
                           double u1_bar = 1.0);

struct StrategyInfo {
  StrategyId id;
  std::vector<Vertex> vertices;
  AlphaFamily family;
};

// All C1..C8 strategies and their cyclic rotations whose alpha family is
// feasible under the given bounds.
std::vector<StrategyInfo> enumerate_strategies(const ControlBounds& b,
                                               double u1_bar = 1.0);

}  // namespace cstrcycle
