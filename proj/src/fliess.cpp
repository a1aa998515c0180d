#include "cstrcycle/fliess.hpp"

#include <cmath>
#include <stdexcept>

namespace cstrcycle {

namespace {

constexpr double kSumTol = 1e-12;

// u0 == 1 joins the two physical channels.
double letter_weight(const Vec2& u, int letter) {
  switch (letter) {
    case 0: return 1.0;
    case 1: return u(0);
    case 2: return u(1);
  }
  throw std::invalid_argument("letters range over {0, 1, 2}");
}

}  // namespace

std::string Word::str() const {
  std::string s;
  for (int i = 0; i < len; ++i) s += static_cast<char>('0' + letter[i]);
  return s;
}

std::vector<Word> all_words(int max_len) {
  std::vector<Word> out;
  for (int n = 1; n <= max_len; ++n) {
    int count = 1;
    for (int i = 0; i < n; ++i) count *= 3;
    for (int code = 0; code < count; ++code) {
      Word w;
      w.len = n;
      int c = code;
      for (int i = n - 1; i >= 0; --i) {
        w.letter[i] = c % 3;
        c /= 3;
      }
      out.push_back(w);
    }
  }
  return out;
}

double IteratedIntegrals::value(const Word& w) const {
  switch (w.len) {
    case 0: return 1.0;
    case 1: return v1[w.letter[0]];
    case 2: return v2[w.letter[0]][w.letter[1]];
    case 3: return v3[w.letter[0]][w.letter[1]][w.letter[2]];
  }
  throw std::invalid_argument("words longer than 3 are not stored");
}

PiecewiseControl piecewise_from_schedule(const Schedule& s) {
  PiecewiseControl c;
  for (std::size_t j = 0; j < s.size(); ++j) {
    c.segments.push_back({s.alphas[j] * s.tau, s.controls[j]});
  }
  c.total_duration = s.tau;
  return c;
}

void validate_control(const PiecewiseControl& c) {
  double sum = 0.0;
  for (const ControlSegment& seg : c.segments) {
    if (!(seg.duration >= 0.0)) {
      throw std::invalid_argument("segment durations must be nonnegative");
    }
    sum += seg.duration;
  }
  if (std::abs(sum - c.total_duration) > kSumTol * std::max(1.0, c.total_duration)) {
    throw std::invalid_argument("segment durations must sum to total_duration");
  }
}

void validate_control(const PiecewiseControl& c, const ControlBounds& b) {
  validate_control(c);
  validate_bounds(b);
  const double tol = 1e-12;
  for (const ControlSegment& seg : c.segments) {
    const double v2 = seg.u(1);
    if (v2 < b.v2_min - tol || v2 > b.v2_max + tol) {
      throw std::invalid_argument("control leaves the admissible flow range");
    }
    const double v1 = seg.u(0) / v2;
    if (v1 < b.v1_min - tol || v1 > b.v1_max + tol) {
      throw std::invalid_argument("control leaves the admissible concentration range");
    }
  }
}

IteratedIntegrals iterated_integrals(const PiecewiseControl& c, double t) {
  validate_control(c);
  const double slack = 1e-12 * std::max(1.0, c.total_duration);
  if (t < -slack || t > c.total_duration + slack) {
    throw std::out_of_range("evaluation time outside the control horizon");
  }

  IteratedIntegrals out;
  out.t = std::max(0.0, std::min(t, c.total_duration));

  double remaining = out.t;
  for (const ControlSegment& seg : c.segments) {
    if (remaining <= 0.0) break;
    const double s = std::min(seg.duration, remaining);
    if (s <= 0.0) continue;
    remaining -= s;

    double w[3];
    for (int i = 0; i < 3; ++i) w[i] = letter_weight(seg.u, i);
    const double s2 = s * s / 2.0;
    const double s3 = s * s * s / 6.0;

    const IteratedIntegrals prev = out;
    // Push each V_w across the segment: a word of length k picks up one
    // polynomial term per split of its leading letters,
    //   V_w(+s) = sum_m (prod of first m letter weights) s^m/m! V_suffix(0).
    for (int i = 0; i < 3; ++i) {
      out.v1[i] = prev.v1[i] + w[i] * s;
      for (int j = 0; j < 3; ++j) {
        out.v2[i][j] = prev.v2[i][j] + w[i] * s * prev.v1[j] + w[i] * w[j] * s2;
        for (int l = 0; l < 3; ++l) {
          out.v3[i][j][l] = prev.v3[i][j][l] + w[i] * s * prev.v2[j][l] +
                            w[i] * w[j] * s2 * prev.v1[l] + w[i] * w[j] * w[l] * s3;
        }
      }
    }
  }
  if (remaining > slack) {
    throw std::out_of_range("control segments end before the evaluation time");
  }
  return out;
}

FieldCoef coef_from_control(const Vec2& u) { return FieldCoef(1.0, u(0), u(1)); }

Vec2 affine_value(const ModelParams& p, const FieldCoef& c, const Vec2& x) {
  const Fields f = eval_fields(p, x);
  return c(0) * f.f0 + c(1) * f.g1 + c(2) * f.g2;
}

Mat2 affine_jacobian(const ModelParams& p, const FieldCoef& c, const Vec2& x) {
  return c(0) * jacobian_f0(p, x) + c(1) * jacobian_g1() + c(2) * jacobian_g2();
}

Vec2 lie_derivative(const ModelParams& p, const FieldCoef& a,
                    const FieldCoef& b, const Vec2& x) {
  return affine_jacobian(p, b, x) * affine_value(p, a, x);
}

Vec2 lie_derivative2(const ModelParams& p, const FieldCoef& a,
                     const FieldCoef& c, const FieldCoef& b, const Vec2& x,
                     double step) {
  const Vec2 d = affine_value(p, a, x);
  const double nd = d.norm();
  if (nd == 0.0) return Vec2::Zero();
  const double h = step * std::max(1.0, x.norm()) / nd;
  const Vec2 plus = lie_derivative(p, c, b, x + h * d);
  const Vec2 minus = lie_derivative(p, c, b, x - h * d);
  return (plus - minus) / (2.0 * h);
}

Vec2 fliess_state(const ModelParams& p, const Vec2& x0,
                  const PiecewiseControl& c, double t) {
  const IteratedIntegrals V = iterated_integrals(c, t);

  FieldCoef cs[3] = {FieldCoef(1, 0, 0), FieldCoef(0, 1, 0), FieldCoef(0, 0, 1)};
  Vec2 x = x0;
  for (int i = 0; i < 3; ++i) {
    x += affine_value(p, cs[i], x0) * V.v1[i];
  }
  // V_{ij} weights L_{g_j} g_i: the inner integral's letter differentiates.
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      x += lie_derivative(p, cs[j], cs[i], x0) * V.v2[i][j];
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int l = 0; l < 3; ++l) {
        x += lie_derivative2(p, cs[l], cs[j], cs[i], x0) * V.v3[i][j][l];
      }
    }
  }
  return x;
}

double iso_residual(const Schedule& s, double u1_bar) {
  double acc = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    acc += s.alphas[j] * s.controls[j](0);
  }
  return acc - u1_bar;
}

double alpha1_two_segment(double u11, double u12, double u1_bar) {
  if (u11 == u12) {
    throw std::invalid_argument(
        "both segments share one u1 value; time-splitting cannot meet the "
        "constraint");
  }
  return (u1_bar - u12) / (u11 - u12);
}

Vec2 periodicity_residual(const ModelParams& p, const Vec2& x0,
                          const Schedule& s) {
  const std::size_t n = s.size();
  if (n > 4) throw std::invalid_argument("at most four segments supported");

  double a[4] = {0.0, 0.0, 0.0, 0.0};
  FieldCoef cs[4];
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = s.alphas[j];
    cs[j] = coef_from_control(s.controls[j]);
  }
  const double tau = s.tau;

  Vec2 r = Vec2::Zero();
  for (std::size_t j = 0; j < n; ++j) {
    r += a[j] * affine_value(p, cs[j], x0);
  }

  // First-derivative layer. The midpoint-matching structure gives the first
  // half-cycle positive squares and the second half negative ones, with one
  // cross term per half.
  Vec2 t2 = Vec2::Zero();
  if (a[0] != 0.0) t2 += a[0] * a[0] * lie_derivative(p, cs[0], cs[0], x0);
  if (a[1] != 0.0) t2 += a[1] * a[1] * lie_derivative(p, cs[1], cs[1], x0);
  if (a[2] != 0.0) t2 -= a[2] * a[2] * lie_derivative(p, cs[2], cs[2], x0);
  if (a[3] != 0.0) t2 -= a[3] * a[3] * lie_derivative(p, cs[3], cs[3], x0);
  if (a[0] != 0.0 && a[1] != 0.0) {
    t2 += 2.0 * a[0] * a[1] * lie_derivative(p, cs[0], cs[1], x0);
  }
  if (a[2] != 0.0 && a[3] != 0.0) {
    t2 -= 2.0 * a[2] * a[3] * lie_derivative(p, cs[3], cs[2], x0);
  }
  r += tau / 2.0 * t2;

  // Second-derivative layer with the matching cubic weights.
  Vec2 t3 = Vec2::Zero();
  for (int j = 0; j < 4; ++j) {
    if (a[j] != 0.0) {
      t3 += a[j] * a[j] * a[j] * lie_derivative2(p, cs[j], cs[j], cs[j], x0);
    }
  }
  if (a[0] != 0.0 && a[1] != 0.0) {
    t3 += 3.0 * a[0] * a[1] *
          (a[0] * lie_derivative2(p, cs[0], cs[0], cs[1], x0) +
           a[1] * lie_derivative2(p, cs[0], cs[1], cs[1], x0));
  }
  if (a[2] != 0.0 && a[3] != 0.0) {
    t3 += 3.0 * a[2] * a[3] *
          (a[3] * lie_derivative2(p, cs[3], cs[3], cs[2], x0) +
           a[2] * lie_derivative2(p, cs[3], cs[2], cs[2], x0));
  }
  r += tau * tau / 6.0 * t3;
  return r;
}

double cost_estimate(const ModelParams& p, const Vec2& x0, const Schedule& s) {
  // The series form covers one switch: collect the segments that carry mass.
  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s.alphas[j] > 0.0) live.push_back(j);
  }
  if (live.empty() || live.size() > 2) {
    throw std::invalid_argument(
        "cost series covers cycles with at most one switch (two live segments)");
  }
  const std::size_t i1 = live[0];
  const std::size_t i2 = live.size() == 2 ? live[1] : live[0];

  double u2bar = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    u2bar += s.alphas[j] * s.controls[j](1);
  }

  const double a1 = s.alphas[i1];
  const double b1 = 1.0 - a1;
  const FieldCoef c1 = coef_from_control(s.controls[i1]);
  const FieldCoef c2 = coef_from_control(s.controls[i2]);
  const double u12 = s.controls[i1](1);
  const double u22 = s.controls[i2](1);
  const double tau = s.tau;

  Vec2 X = u2bar * x0;
  X += tau / 2.0 * (a1 * a1 * u12 * affine_value(p, c1, x0) -
                    b1 * b1 * u22 * affine_value(p, c2, x0));
  X += tau * tau / 6.0 *
       (a1 * a1 * a1 * u12 * lie_derivative(p, c1, c1, x0) +
        b1 * b1 * b1 * u22 * lie_derivative(p, c2, c2, x0));
  X += tau * tau * tau / 24.0 *
       (a1 * a1 * a1 * a1 * u12 * lie_derivative2(p, c1, c1, c1, x0) -
        b1 * b1 * b1 * b1 * u22 * lie_derivative2(p, c2, c2, c2, x0));
  return u2bar + X(0);
}

}  // namespace cstrcycle
