#include "cstrcycle/model.hpp"

#include <cmath>
#include <stdexcept>

namespace cstrcycle {

namespace {

// Reaction rate r(x) = (1+x1)^n exp(-gamma/(1+x2)) and its partials.
// The n_bar == 1 branch avoids pow in the integrator hot path.
double rate(const ModelParams& p, double x1, double x2) {
  const double e = std::exp(-p.gamma / (1.0 + x2));
  if (p.n_bar == 1.0) return (1.0 + x1) * e;
  return std::pow(1.0 + x1, p.n_bar) * e;
}

void require_domain(const Vec2& x) {
  if (!in_domain(x)) {
    throw std::domain_error("state outside physical domain: 1+x_i must stay positive");
  }
}

}  // namespace

bool in_domain(const Vec2& x) {
  return x(0) > -1.0 && x(1) > -1.0 && std::isfinite(x(0)) && std::isfinite(x(1));
}

ModelParams dimensionless_from_physical(const PhysicalParams& p,
                                        double St, double delta) {
  if (p.gas_constant <= 0.0 || p.temp_ss <= 0.0 || p.volume <= 0.0 ||
      p.flow_rate_ss <= 0.0 || p.rho_cp <= 0.0) {
    throw std::invalid_argument(
        "physical parameters: gas_constant, temp_ss, volume, flow_rate_ss, rho_cp "
        "must be positive");
  }
  if (p.conc_out_ss <= 0.0) {
    throw std::invalid_argument("physical parameters: conc_out_ss must be positive");
  }
  ModelParams m;
  // activation_energy arrives in kJ/mol, gas_constant in J/(K mol)
  m.gamma = p.activation_energy * 1e3 / (p.gas_constant * p.temp_ss);
  m.k1 = p.collision_factor * std::pow(p.conc_out_ss, p.reaction_order - 1.0) *
         p.volume / p.flow_rate_ss;
  m.k2 = p.reaction_heat * p.collision_factor *
         std::pow(p.conc_out_ss, p.reaction_order) * p.volume /
         (p.rho_cp * p.temp_ss * p.flow_rate_ss);
  m.St = St;
  m.delta = delta;
  m.n_bar = p.reaction_order;
  return m;
}

ModelParams default_params() { return ModelParams{}; }

PhysicalParams default_physical_params() { return PhysicalParams{}; }

Fields eval_fields(const ModelParams& p, const Vec2& x) {
  require_domain(x);
  const double r = rate(p, x(0), x(1));
  Fields f;
  f.f0 = Vec2(-p.k1 * r, p.delta - p.St * (1.0 + x(1)) - p.k2 * r);
  f.g1 = Vec2(1.0 + p.k1 * std::exp(-p.gamma), 0.0);
  f.g2 = Vec2(-1.0 - x(0), p.k2 * std::exp(-p.gamma) + p.St - p.delta - x(1));
  return f;
}

Vec2 drift(const ModelParams& p, const Vec2& x, const Vec2& u) {
  const Fields f = eval_fields(p, x);
  return f.f0 + u(0) * f.g1 + u(1) * f.g2;
}

Mat2 jacobian_f0(const ModelParams& p, const Vec2& x) {
  require_domain(x);
  const double e = std::exp(-p.gamma / (1.0 + x(1)));
  const double pw = p.n_bar == 1.0 ? 1.0 + x(0) : std::pow(1.0 + x(0), p.n_bar);
  const double pw1 =
      p.n_bar == 1.0 ? 1.0 : p.n_bar * std::pow(1.0 + x(0), p.n_bar - 1.0);
  const double dr_dx1 = pw1 * e;
  const double dr_dx2 = pw * e * p.gamma / ((1.0 + x(1)) * (1.0 + x(1)));
  Mat2 j;
  j << -p.k1 * dr_dx1, -p.k1 * dr_dx2,
       -p.k2 * dr_dx1, -p.St - p.k2 * dr_dx2;
  return j;
}

Mat2 jacobian_g1() { return Mat2::Zero(); }

Mat2 jacobian_g2() { return -Mat2::Identity(); }

}  // namespace cstrcycle
