#include <doctest.h>

#include <cmath>

#include "cstrcycle/model.hpp"
#include "test_util.hpp"

using namespace cstrcycle;

namespace {

// Central-difference Jacobian of f0, the numeric oracle for the analytic one.
Mat2 fd_jacobian_f0(const ModelParams& p, const Vec2& x, double step) {
  Mat2 J;
  for (int k = 0; k < 2; ++k) {
    const double h = step * std::max(1.0, std::abs(x(k)));
    Vec2 xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    const Vec2 col = (eval_fields(p, xp).f0 - eval_fields(p, xm).f0) / (2.0 * h);
    J(0, k) = col(0);
    J(1, k) = col(1);
  }
  return J;
}

}  // namespace

TEST_CASE("fields at the origin match their closed forms") {
  const ModelParams p = default_params();
  const double e = std::exp(-p.gamma);
  const Fields f = eval_fields(p, Vec2::Zero());

  CHECK(f.f0(0) == doctest::Approx(-p.k1 * e).epsilon(1e-14));
  CHECK(f.f0(1) == doctest::Approx(-p.k2 * e).epsilon(1e-14));
  CHECK(f.g1(0) == doctest::Approx(1.0 + p.k1 * e).epsilon(1e-14));
  CHECK(f.g1(1) == 0.0);
  CHECK(f.g2(0) == -1.0);
  CHECK(f.g2(1) == doctest::Approx(p.k2 * e).epsilon(1e-14));

  // Published 6-digit prints of the same quantities.
  CHECK(f.f0(0) == doctest::Approx(-1.11538).epsilon(1e-4));
  CHECK(f.f0(1) == doctest::Approx(0.017232).epsilon(1e-4));
  CHECK(f.g1(0) == doctest::Approx(2.11538).epsilon(1e-4));
  CHECK(f.g2(1) == doctest::Approx(-0.017232).epsilon(1e-4));
}

TEST_CASE("drift is the affine combination of the fields") {
  const ModelParams p = default_params();

  CHECK(drift(p, Vec2::Zero(), Vec2(1.0, 1.0)).norm() <= 1e-12);

  const Vec2 f0 = eval_fields(p, Vec2::Zero()).f0;
  const Vec2 d0 = drift(p, Vec2::Zero(), Vec2::Zero());
  CHECK((d0 - f0).norm() == 0.0);
  CHECK(d0(0) == doctest::Approx(-1.11538).epsilon(1e-4));

  const Vec2 x(0.12, -0.07);
  const Vec2 u(0.3, 1.6);
  const Fields f = eval_fields(p, x);
  const Vec2 lin = drift(p, x, u) - drift(p, x, Vec2::Zero());
  CHECK((lin - (u(0) * f.g1 + u(1) * f.g2)).norm() == 0.0);
}

TEST_CASE("Jacobians at the origin match the closed forms") {
  const ModelParams p = default_params();
  const double e = std::exp(-p.gamma);
  const Mat2 J = jacobian_f0(p, Vec2::Zero());

  CHECK(J(0, 0) == doctest::Approx(-p.k1 * e).epsilon(1e-14));
  CHECK(J(0, 1) == doctest::Approx(-p.k1 * e * p.gamma).epsilon(1e-14));
  CHECK(J(1, 0) == doctest::Approx(-p.k2 * e).epsilon(1e-14));
  CHECK(J(1, 1) == doctest::Approx(-p.k2 * e * p.gamma).epsilon(1e-14));

  CHECK(J(0, 0) == doctest::Approx(-1.11538).epsilon(1e-4));
  CHECK(J(0, 1) == doctest::Approx(-19.820).epsilon(1e-4));
  CHECK(J(1, 0) == doctest::Approx(0.017232).epsilon(1e-4));
  CHECK(J(1, 1) == doctest::Approx(0.30622).epsilon(1e-4));

  CHECK(jacobian_g1().norm() == 0.0);
  CHECK((jacobian_g2() + Mat2::Identity()).norm() == 0.0);
}

TEST_CASE("analytic Jacobian agrees with central differences") {
  const ModelParams p = default_params();
  testutil::Rng rng(0x5eedbeef01u);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec2 x(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
    const Mat2 Ja = jacobian_f0(p, x);
    const Mat2 Jn = fd_jacobian_f0(p, x, 1e-6);
    const double rel = (Ja - Jn).norm() / std::max(1.0, Ja.norm());
    CHECK(rel <= 1e-6);
  }
}

TEST_CASE("input field g1 is constant and g2 is affine with slope -I") {
  const ModelParams p = default_params();
  const Fields f0 = eval_fields(p, Vec2::Zero());
  testutil::Rng rng(0x5eedbeef02u);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec2 x(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6));
    const Fields f = eval_fields(p, x);
    CHECK((f.g1 - f0.g1).norm() == 0.0);
    CHECK((f.g2 - (f0.g2 - x)).norm() <= 1e-15);
  }
}

TEST_CASE("physical data reduces to the published dimensionless set") {
  const ModelParams m = dimensionless_from_physical(default_physical_params());
  CHECK(std::abs(m.gamma - 17.77) <= 0.01);
  CHECK(std::abs(m.k1 - 5.819e7) <= 0.001e7);
  CHECK(std::abs(m.k2 - (-8.99e5)) <= 0.01e5);
  CHECK(m.St == 0.0);
  CHECK(m.delta == 0.0);
  CHECK(m.n_bar == 1.0);

  CHECK(std::abs(dimensionless_from_physical(default_physical_params(), 0.25,
                                             0.125)
                     .St -
                 0.25) == 0.0);
}

TEST_CASE("physical validation rejects nonpositive denominators") {
  PhysicalParams bad = default_physical_params();
  bad.flow_rate_ss = 0.0;
  CHECK_THROWS_AS(dimensionless_from_physical(bad), std::invalid_argument);
  bad = default_physical_params();
  bad.temp_ss = -1.0;
  CHECK_THROWS_AS(dimensionless_from_physical(bad), std::invalid_argument);
  bad = default_physical_params();
  bad.rho_cp = 0.0;
  CHECK_THROWS_AS(dimensionless_from_physical(bad), std::invalid_argument);
}

TEST_CASE("evaluation rejects states at or past the singular line") {
  const ModelParams p = default_params();
  CHECK(in_domain(Vec2(-0.999, -0.999)));
  CHECK_FALSE(in_domain(Vec2(-1.0, 0.0)));
  CHECK_FALSE(in_domain(Vec2(0.0, -1.0)));
  CHECK_FALSE(in_domain(Vec2(std::nan(""), 0.0)));
  CHECK_THROWS_AS(eval_fields(p, Vec2(-1.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(drift(p, Vec2(0.0, -1.5), Vec2(1.0, 1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(jacobian_f0(p, Vec2(-2.0, 0.0)), std::domain_error);
}
