#pragma once

#include <array>
#include <string>
#include <vector>

#include "cstrcycle/model.hpp"
#include "cstrcycle/schedule.hpp"

namespace cstrcycle {

// Multi-index over the generating family of the functional expansion:
// letter 0 is the drift f0 (weight u0 == 1), letters 1 and 2 the control
// fields g1, g2. letter[0] indexes the outermost integral.
struct Word {
  int len = 0;
  std::array<int, 3> letter{};

  std::string str() const;  // "0", "12", "012"; empty word gives ""
};

// All words of length 1..max_len in lexicographic order.
std::vector<Word> all_words(int max_len = 3);

// Values V_w(t) of the nested input integrals for all words up to length 3.
// The empty word has value 1 by convention; the all-zero word of length k
// equals t^k/k! exactly.
struct IteratedIntegrals {
  double t = 0.0;
  std::array<double, 3> v1{};
  std::array<std::array<double, 3>, 3> v2{};
  std::array<std::array<std::array<double, 3>, 3>, 3> v3{};

  double value(const Word& w) const;
};

// Piecewise-constant input signal; u is held over each duration.
struct ControlSegment {
  double duration = 0.0;
  Vec2 u = Vec2::Zero();
};
struct PiecewiseControl {
  std::vector<ControlSegment> segments;
  double total_duration = 0.0;
};

PiecewiseControl piecewise_from_schedule(const Schedule& s);

// Structural check: nonnegative durations summing to total_duration within
// 1e-12. The ControlBounds overload additionally requires every u to be a
// point of the admissible box (u2 in the flow range, u1/u2 in the
// concentration range). Throws std::invalid_argument.
void validate_control(const PiecewiseControl& c);
void validate_control(const PiecewiseControl& c, const ControlBounds& b);

// Exact closed-form evaluation: on each constant segment every V_w is a
// polynomial in elapsed time, pushed forward segment by segment; evaluation
// stops at t even mid-segment. Throws std::out_of_range when t is outside
// [0, total_duration].
IteratedIntegrals iterated_integrals(const PiecewiseControl& c, double t);

// Coefficients of an affine field combination c0 f0 + c1 g1 + c2 g2;
// a control u corresponds to (1, u1, u2).
using FieldCoef = Eigen::Vector3d;

FieldCoef coef_from_control(const Vec2& u);
Vec2 affine_value(const ModelParams& p, const FieldCoef& c, const Vec2& x);
Mat2 affine_jacobian(const ModelParams& p, const FieldCoef& c, const Vec2& x);

// First directional derivative L_a b (x) = Jb(x) a(x), analytic.
Vec2 lie_derivative(const ModelParams& p, const FieldCoef& a,
                    const FieldCoef& b, const Vec2& x);

// Second directional derivative L_a (L_c b) (x) by central differences of
// y -> Jb(y) c_field(y) along a(x); relative step scaled by the state size.
Vec2 lie_derivative2(const ModelParams& p, const FieldCoef& a,
                     const FieldCoef& c, const FieldCoef& b, const Vec2& x,
                     double step = 1e-5);

// Third-order functional expansion of the state at time t:
//   x0 + sum_i g_i V_i + sum_ij (L_{g_j} g_i) V_{ij}
//      + sum_ijl (L_{g_l} L_{g_j} g_i) V_{ijl},
// all fields evaluated at x0 (g_0 = f0). Remainder is O(t^4).
Vec2 fliess_state(const ModelParams& p, const Vec2& x0,
                  const PiecewiseControl& c, double t);

// sum_j alpha_j u1_j - u1_bar; zero iff the average-consumption constraint holds.
double iso_residual(const Schedule& s, double u1_bar = 1.0);

// Closed-form first fraction of a two-segment cycle meeting the constraint:
// (u1_bar - u12) / (u11 - u12). Caller must check the result lies in (0, 1).
// Throws std::invalid_argument when u11 == u12.
double alpha1_two_segment(double u11, double u12, double u1_bar = 1.0);

// Truncated periodicity condition of the third-order expansion: the
// alpha-weighted field combination plus the tau/2 layer of first directional
// derivatives and the tau^2/6 layer of second ones, all evaluated at x0.
// A root approximates a periodic point with O(tau^3) error. Supports up to
// four segments.
Vec2 periodicity_residual(const ModelParams& p, const Vec2& x0,
                          const Schedule& s);

// Truncated series for the period-averaged cost of a two-segment cycle at
// anchor x0 (layers through tau^3). Throws std::invalid_argument when more
// than two segments carry positive fractions: the series form covers
// single-switch cycles only.
double cost_estimate(const ModelParams& p, const Vec2& x0, const Schedule& s);

}  // namespace cstrcycle
