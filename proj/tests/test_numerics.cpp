#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "dw/elliptic.hpp"
#include "dw/fisher.hpp"
#include "dw/numerics.hpp"
#include "dw/poly_parse.hpp"
#include "dw/waves.hpp"

using dw::ClosedForm;
using dw::QuadExt;
using dw::Rat;

namespace {

struct FisherSetup {
  dw::PlanarSystem sys;
  dw::Equilibrium saddle;  // (1, 0)
  dw::Equilibrium node;    // (0, 0)
  dw::MultiPoly curve;     // the certified curve in (U, U') coordinates
};

FisherSetup fisher(const QuadExt& c) {
  FisherSetup f;
  f.sys = dw::to_planar(dw::travelling_wave_reduce(dw::parse_pde(dw::kFisherPde), c));
  f.saddle = dw::Equilibrium::exact_point({QuadExt(1), QuadExt(0)});
  f.node = dw::Equilibrium::exact_point({QuadExt(0), QuadExt(0)});
  f.curve = dw::pull_back(dw::expected_fisher_curve(f.sys), f.sys, dw::AffineMap::parse("1-x,y"));
  return f;
}

dw::VectorField scalar(const std::string& rhs) {
  auto reg = dw::VarRegistry::create();
  const dw::VarId y = reg->intern("y");
  return dw::VectorField({dw::parse_poly(rhs, reg)}, {y});
}

}  // namespace

TEST_CASE("integrators on known solutions") {
  const auto growth = scalar("y");
  const auto orbit = dw::integrate(growth, {1.0}, 0.0, 1.0);
  CHECK(orbit.ok());
  CHECK(std::abs(orbit.terminal()[0] - std::exp(1.0)) < 1e-9);
  for (std::size_t i = 1; i < orbit.s.size(); ++i) CHECK(orbit.s[i] > orbit.s[i - 1]);
  CHECK(orbit.max_step <= dw::ShootingConfig{}.h_max);

  const auto flat = dw::integrate(scalar("0"), {3.5}, 0.0, 10.0);
  for (const auto& y : flat.y) CHECK(y[0] == 3.5);

  dw::ShootingConfig rk4;
  rk4.method = dw::Integrator::RK4;
  rk4.h = 0.1;
  const double e1 = std::abs(dw::integrate(growth, {1.0}, 0.0, 1.0, rk4).terminal()[0] - std::exp(1.0));
  rk4.h = 0.05;
  const auto half = dw::integrate(growth, {1.0}, 0.0, 1.0, rk4);
  const double e2 = std::abs(half.terminal()[0] - std::exp(1.0));
  CHECK(half.s.size() == 21);
  CHECK(half.s.back() == 1.0);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));

  CHECK_THROWS_AS(dw::integrate(growth, {1.0, 2.0}, 0.0, 1.0), dw::DomainError);
  CHECK_THROWS_AS(dw::integrate(growth, {1.0}, 1.0, 0.0), dw::DomainError);
}

TEST_CASE("integration failures are reported") {
  // y' = y^2 from 1 blows up at s = 1.
  const auto blow = dw::integrate(scalar("y^2"), {1.0}, 0.0, 2.0);
  CHECK(blow.status == dw::OrbitStatus::Diverged);
  CHECK(blow.s.back() < 1.0);
  dw::ShootingConfig rk4;
  rk4.method = dw::Integrator::RK4;
  rk4.h = 1e-3;
  CHECK(dw::integrate(scalar("y^2"), {1.0}, 0.0, 2.0, rk4).status == dw::OrbitStatus::Diverged);
  dw::ShootingConfig few;
  few.max_steps = 3;
  CHECK(dw::integrate(scalar("y"), {1.0}, 0.0, 50.0, few).status == dw::OrbitStatus::StepLimit);
  dw::ShootingConfig coarse;
  coarse.h_min = 0.4;
  coarse.h = 0.5;
  CHECK(dw::integrate(scalar("y^2"), {1.0}, 0.0, 2.0, coarse).status != dw::OrbitStatus::Completed);

  auto reg = dw::VarRegistry::create();
  const dw::VarId y = reg->intern("y");
  CHECK_THROWS_AS(dw::VectorField({dw::parse_poly("a*y", reg)}, {y}), dw::DomainError);
}

TEST_CASE("Fisher shooting at the algebraic speed") {
  const auto setup = fisher(QuadExt::parse("5/6*sqrt(6)"));
  const auto shot =
      dw::shoot_unstable_manifold(setup.sys, setup.saddle, dw::ShootDirection::Toward, {}, setup.node, {setup.node});
  CHECK(shot.orbit.ok());
  CHECK(shot.converged);
  CHECK(shot.target->terminal < 1e-6);
  CHECK(shot.direction[0] < 0.0);  // toward decreasing U
  CHECK(shot.eigen.lambda_plus_value == doctest::Approx(1.0 / std::sqrt(6.0)));
  const auto res = dw::curve_residual_along_orbit(setup.curve, {setup.sys.x, setup.sys.y}, shot.orbit);
  CHECK(res.max_abs < 1e-5);
  CHECK(res.mean_abs <= res.max_abs);

  // Bit-for-bit reproducible.
  const auto again =
      dw::shoot_unstable_manifold(setup.sys, setup.saddle, dw::ShootDirection::Toward, {}, setup.node);
  CHECK(again.orbit.y == shot.orbit.y);
  CHECK(again.orbit.s == shot.orbit.s);

  const auto away =
      dw::shoot_unstable_manifold(setup.sys, setup.saddle, dw::ShootDirection::Away, {}, setup.node);
  CHECK(away.orbit.status == dw::OrbitStatus::Diverged);
  CHECK_FALSE(away.converged);
  CHECK(away.direction[0] > 0.0);

  CHECK_THROWS_AS(dw::shoot_unstable_manifold(setup.sys, setup.node, dw::ShootDirection::Plus), dw::DomainError);
  CHECK_THROWS_AS(dw::shoot_unstable_manifold(setup.sys, setup.saddle, dw::ShootDirection::Toward), dw::DomainError);
}

TEST_CASE("curve residual shrinks with the offset") {
  const auto setup = fisher(QuadExt::parse("5/6*sqrt(6)"));
  std::vector<double> residuals;
  for (double eps : {1e-4, 1e-5, 1e-6}) {
    dw::ShootingConfig cfg;
    cfg.epsilon = eps;
    const auto shot = dw::shoot_unstable_manifold(setup.sys, setup.saddle, dw::ShootDirection::Toward, cfg, setup.node);
    residuals.push_back(dw::curve_residual_along_orbit(setup.curve, {setup.sys.x, setup.sys.y}, shot.orbit).max_abs);
  }
  CHECK(residuals[1] < residuals[0]);
  CHECK(residuals[2] < residuals[1]);
}

TEST_CASE("Fisher at c = 3 connects but leaves the curve") {
  const auto setup = fisher(QuadExt(3));
  const auto curve6 = fisher(QuadExt::parse("5/6*sqrt(6)")).curve;
  // Slower escape (lambda+ ~ 0.30) and slower decay at the node: a longer horizon.
  dw::ShootingConfig cfg;
  cfg.horizon = 150.0;
  const auto shot = dw::shoot_unstable_manifold(setup.sys, setup.saddle, dw::ShootDirection::Toward, cfg, setup.node);
  CHECK(shot.converged);
  const auto res = dw::curve_residual_along_orbit(dw::substitute(curve6, {}, setup.sys.registry),
                                                  {setup.sys.x, setup.sys.y}, shot.orbit);
  CHECK(res.max_abs > 1e-3);
  CHECK(dw::curve_residual_along_orbit(dw::MultiPoly(0), {setup.sys.x, setup.sys.y}, shot.orbit).max_abs == 0.0);
}

TEST_CASE("ODE residuals of closed-form profiles") {
  const auto grid = dw::linspace(-10, 10, 201);
  CHECK(grid.size() == 201);
  CHECK(grid[100] == 0.0);

  const auto fisher_sys = dw::travelling_wave_reduce(dw::parse_pde(dw::kFisherPde), QuadExt::parse("5/6*sqrt(6)"));
  const ClosedForm s = ClosedForm::var();
  const ClosedForm az = (ClosedForm(1) + exp(ClosedForm(QuadExt::parse("1/6*sqrt(6)")) * s)).pow(-2);
  const auto r = dw::ode_residual(az, fisher_sys, grid);
  CHECK(r.symbolic);
  CHECK(r.max_abs < 1e-9);
  CHECK(dw::ode_residual(az, fisher_sys, grid, 7.0).max_abs < 1e-9);
  CHECK(dw::ode_residual(ClosedForm(1), fisher_sys, grid).max_abs == 0.0);
  CHECK(dw::ode_residual(ClosedForm(0), fisher_sys, grid).max_abs == 0.0);
  CHECK(dw::ode_residual(ClosedForm(Rat(1, 2)), fisher_sys, grid).max_abs > 0.1);

  const auto kdv = dw::travelling_wave_reduce(dw::parse_pde("u_t - 6*u*u_x + u_xxx = 0"), QuadExt(4));
  const ClosedForm soliton = ClosedForm(-2) / cosh(s).pow(2);
  CHECK(kdv.n == 3);
  CHECK(dw::ode_residual(soliton, kdv, grid).max_abs < 1e-8);

  // Non-symbolic path: cn with m = 1 is sech.
  const ClosedForm cn_soliton = ClosedForm(-2) * jacobi_cn(s, 1.0).pow(2);
  const auto rn = dw::ode_residual(cn_soliton, kdv, dw::linspace(-5, 5, 41));
  CHECK_FALSE(rn.symbolic);
  CHECK(rn.max_abs < 1e-4);  // third derivative by differences
}

TEST_CASE("boundary limits") {
  const ClosedForm s = ClosedForm::var();
  const ClosedForm az = (ClosedForm(1) + exp(ClosedForm(QuadExt::parse("1/6*sqrt(6)")) * s)).pow(-2);
  CHECK(dw::boundary_limit_check(az, 1.0, 0.0).passed);
  CHECK_FALSE(dw::boundary_limit_check(az, 0.0, 1.0).passed);
  const ClosedForm soliton = ClosedForm(-2) / cosh(s).pow(2);
  CHECK(dw::boundary_limit_check(soliton, 0.0, 0.0).passed);
  const ClosedForm bq = ClosedForm(-2) + ClosedForm(3) * tanh(ClosedForm(QuadExt(Rat(1, 2))) * s).pow(2);
  const auto b = dw::boundary_limit_check(bq, 1.0, 1.0);
  CHECK(b.passed);
  CHECK(b.left == doctest::Approx(b.right));
  const auto periodic = dw::boundary_limit_check(jacobi_cn(s, 0.0), 1.0, 1.0);
  CHECK_FALSE(periodic.passed);
}

TEST_CASE("Jacobi elliptic functions") {
  for (double x : {0.0, 1.0, std::numbers::pi / 2}) CHECK(std::abs(dw::jacobi_cn(x, 0.0) - std::cos(x)) < 1e-12);
  for (double m : {0.0, 0.3, 0.5, 0.99, 1.0}) CHECK(dw::jacobi_cn(0.0, m) == doctest::Approx(1.0));
  for (double x : {0.0, 1.0, 2.0}) CHECK(std::abs(dw::jacobi_cn(x, 1.0) - 1.0 / std::cosh(x)) < 1e-12);
  for (double m : {0.1, 0.5, 0.9}) {
    for (double x : {-2.3, -0.4, 0.7, 1.9, 5.0}) {
      const auto v = dw::jacobi_elliptic(x, m);
      CHECK(std::abs(v.cn * v.cn + v.sn * v.sn - 1.0) < 1e-10);
      CHECK(std::abs(v.dn * v.dn + m * v.sn * v.sn - 1.0) < 1e-10);
      const double h = 1e-5;
      const double d = (dw::jacobi_cn(x + h, m) - dw::jacobi_cn(x - h, m)) / (2 * h);
      CHECK(std::abs(d + v.sn * v.dn) < 1e-9);
    }
  }
  // m = 1/2: cn(K) = 0 with K = 1.854074677301372.
  CHECK(std::abs(dw::jacobi_cn(1.854074677301372, 0.5)) < 1e-12);
  CHECK_THROWS_AS(dw::jacobi_cn(1.0, -0.1), dw::DomainError);
  CHECK_THROWS_AS(dw::jacobi_cn(1.0, 1.1), dw::DomainError);
}

TEST_CASE("CSV export") {
  dw::ShootingConfig rk4;
  rk4.method = dw::Integrator::RK4;
  rk4.h = 0.5;
  const auto orbit = dw::integrate(scalar("y"), {1.0}, 0.0, 1.0, rk4);
  std::ostringstream out;
  dw::write_csv(orbit, {"y"}, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "s,y");
  std::getline(in, line);
  CHECK(line == "0,1");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}
