#pragma once

#include <Eigen/Core>

namespace cstrcycle {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Dimensionless two-state exothermic CSTR in deviation coordinates.
// x1: reactant concentration deviation, x2: temperature deviation; both
// must stay above -1. Dynamics are control-affine,
//   xdot = f0(x) + u1 g1(x) + u2 g2(x),
// with u1 scaling the inlet-concentration supply and u2 the flow rate.
struct ModelParams {
  double gamma = 17.77;  // dimensionless activation energy
  double k1 = 5.819e7;   // dimensionless rate constant
  double k2 = -8.99e5;   // dimensionless heat-release constant (negative: exothermic)
  double St = 0.0;       // Stanton number (cooling)
  double delta = 0.0;    // dimensionless coolant temperature offset
  double n_bar = 1.0;    // reaction order
};

// Plant data in laboratory units. activation_energy is in kJ/mol while
// gas_constant is in J/(K mol); the unit mismatch is resolved internally
// (the published constants force that reading).
struct PhysicalParams {
  double activation_energy = 44.35;   // kJ/mol
  double gas_constant = 8.3144598;    // J/(K mol)
  double collision_factor = 1.4e5;    // 1/s
  double reaction_heat = -55.5;       // kJ/mol, signed
  double rho_cp = 4.186;              // kJ/(K l)
  double volume = 0.298;              // l
  double flow_rate_ss = 7.17e-4;      // l/s
  double conc_out_ss = 0.3498;        // mol/l, steady in-reactor concentration
  double conc_in_ss = 2.3;            // mol/l, steady inlet concentration
  double temp_ss = 300.17;            // K
  double reaction_order = 1.0;
};

// Dimensionless groups from plant data:
//   gamma = E_A / (R T),  k1 = k0 C^(n-1) V / F,  k2 = dH k0 C^n V / (rho_cp T F).
// St and delta are pass-through (0 for the adiabatic case). Throws
// std::invalid_argument when a denominator or required positivity fails.
ModelParams dimensionless_from_physical(const PhysicalParams& p,
                                        double St = 0.0, double delta = 0.0);

// Benchmark operating point.
ModelParams default_params();
PhysicalParams default_physical_params();

// True when both states sit strictly inside the physical domain.
bool in_domain(const Vec2& x);

// Vector fields at x. Throws std::domain_error when 1+x1 <= 0 or 1+x2 <= 0.
struct Fields {
  Vec2 f0;
  Vec2 g1;  // constant field
  Vec2 g2;
};
Fields eval_fields(const ModelParams& p, const Vec2& x);

// f0(x) + u1 g1(x) + u2 g2(x).
Vec2 drift(const ModelParams& p, const Vec2& x, const Vec2& u);

// Analytic Jacobians. g1 is constant and g2 has slope -identity.
Mat2 jacobian_f0(const ModelParams& p, const Vec2& x);
Mat2 jacobian_g1();
Mat2 jacobian_g2();

}  // namespace cstrcycle
