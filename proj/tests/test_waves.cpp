#include <cmath>

#include "doctest.h"
#include "dw/fisher.hpp"
#include "dw/poly_parse.hpp"
#include "dw/reduction.hpp"
#include "dw/waves.hpp"

using dw::ClosedForm;
using dw::MultiPoly;
using dw::Number;
using dw::QuadExt;
using dw::Rat;

namespace {

MultiPoly uv(const dw::WaveSymbols& ws, const std::string& text) { return dw::parse_poly(text, ws.registry); }

MultiPoly in_z(const dw::RegistryPtr& reg, const std::string& text) { return dw::parse_poly(text, reg); }

const ClosedForm s = ClosedForm::var();

}  // namespace

TEST_CASE("closed form evaluation and derivatives") {
  const ClosedForm f = ClosedForm(3) * s.pow(2) + exp(ClosedForm(2) * s);
  CHECK(f(1.0) == doctest::Approx(3.0 + std::exp(2.0)));
  CHECK(f.derivative()(1.0) == doctest::Approx(6.0 + 2.0 * std::exp(2.0)));
  CHECK(f.derivative_at(0.5, 2) == doctest::Approx(6.0 + 4.0 * std::exp(1.0)));
  const ClosedForm g = tanh(s) / cosh(s) + sqrt(ClosedForm(1) + s.pow(2)) + (ClosedForm(2) + s).pow(Rat(-1, 3));
  for (double t : {-1.5, 0.0, 0.7}) {
    const double h = 1e-6;
    CHECK(g.derivative()(t) == doctest::Approx((g(t + h) - g(t - h)) / (2 * h)).epsilon(1e-7));
  }
  CHECK(ClosedForm(0).is_zero());
  CHECK((ClosedForm(0) * g).is_zero());
  CHECK((ClosedForm(2) * ClosedForm(QuadExt::parse("sqrt(6)"))).constant().exact == QuadExt::parse("2*sqrt(6)"));
  CHECK(ClosedForm::k()(0.0, 5.0) == 5.0);
  CHECK((ClosedForm(1) - s).to_string() == "1 - s");

  const ClosedForm c = jacobi_cn(s, 0.5);
  CHECK_FALSE(c.has_symbolic_derivative());
  CHECK_THROWS_AS(c.derivative(), dw::DomainError);
  CHECK(jacobi_cn(s, 0.0).derivative_at(1.0, 1) == doctest::Approx(-std::sin(1.0)).epsilon(1e-10));
  CHECK_THROWS_AS(jacobi_cn(s, 1.5), dw::DomainError);
}

TEST_CASE("exact square roots of constants") {
  CHECK(*dw::sqrt_number(QuadExt(4)).exact == QuadExt(2));
  CHECK(*dw::sqrt_number(QuadExt(Rat(1, 6))).exact == QuadExt::parse("1/6*sqrt(6)"));
  CHECK(*dw::sqrt_number(QuadExt(Rat(25, 6))).exact == QuadExt::parse("5/6*sqrt(6)"));
  CHECK_FALSE(dw::sqrt_number(QuadExt::parse("1 + sqrt(2)")).exact);
}

TEST_CASE("exp-rational normal form") {
  const QuadExt mu(Rat(1, 2));
  const auto burgers = dw::to_exp_rational(ClosedForm(1) - tanh(ClosedForm(QuadExt(Rat(1, 2))) * s), mu);
  REQUIRE(burgers);
  // 1 - (z^2 - 1)/(z^2 + 1) = 2/(z^2 + 1)
  const auto& r = burgers->registry;
  CHECK(burgers->num * in_z(r, "z^2 + 1") == burgers->den * in_z(r, "2"));
  CHECK_FALSE(dw::to_exp_rational(sqrt(s), mu));
  CHECK_FALSE(dw::to_exp_rational(exp(ClosedForm(QuadExt(Rat(1, 3))) * s), mu));
  CHECK_FALSE(dw::to_exp_rational(ClosedForm(Number(0.5)) + exp(s), mu));
  CHECK(dw::to_exp_rational(exp(ClosedForm(-1) * s), mu));
}

TEST_CASE("identity checks in the exp-rational fragment") {
  const auto ws = dw::wave_symbols();
  const QuadExt mu = QuadExt::parse("1/6*sqrt(6)");
  const ClosedForm U = (ClosedForm(1) + exp(ClosedForm(mu) * s)).pow(-2);
  const auto ex = dw::to_exp_rational(U, mu);
  REQUIRE(ex);
  CHECK(dw::vanishes_identically(uv(ws, "3*V^2 + 2*sqrt(6)*U*V + 2*(1-U)*U^2"), ws.U, ws.V, *ex));
  CHECK_FALSE(dw::vanishes_identically(uv(ws, "3*V^2 + 2*sqrt(6)*U*V + 2*(1+U)*U^2"), ws.U, ws.V, *ex));

  const ClosedForm B = ClosedForm(2) * (ClosedForm(1) - tanh(ClosedForm(1) * s));
  const auto eb = dw::to_exp_rational(B, QuadExt(1));
  REQUIRE(eb);
  // a = 1, c = 2: p = 2V + (4 - U) U
  CHECK(dw::vanishes_identically(uv(ws, "2*V + (4 - U)*U"), ws.U, ws.V, *eb));
}

TEST_CASE("p from exp-rational profiles") {
  auto reg = dw::VarRegistry::create();
  const auto ws = dw::wave_symbols();
  // Burgers: U = 2c/(1 + z^2), z = exp(c s/(2a)).
  for (auto [a, c] : {std::pair{1, 1}, std::pair{2, 3}, std::pair{-1, 2}}) {
    const MultiPoly p = dw::p_from_exp_rational(in_z(reg, std::to_string(2 * c)), in_z(reg, "1 + z^2"),
                                                QuadExt(Rat(c, 2 * a)));
    const MultiPoly printed = uv(ws, std::to_string(2 * a) + "*V + (" + std::to_string(2 * c) + " - U)*U");
    CHECK(dw::make_monic(p) == dw::make_monic(printed));
  }
  // Fisher: U = 1/(1 + z)^2, z = exp(s/sqrt(6)).
  const MultiPoly fisher = dw::p_from_exp_rational(in_z(reg, "1"), in_z(reg, "(1 + z)^2"), QuadExt::parse("1/6*sqrt(6)"));
  // Primitive, with no extraneous factor.
  CHECK(fisher == -uv(ws, "3*V^2 + 2*sqrt(6)*U*V + 2*(1-U)*U^2"));
  // U = z, lambda = 1.
  CHECK(dw::p_from_exp_rational(in_z(reg, "z"), in_z(reg, "1"), QuadExt(1)) == uv(ws, "U - V"));
  CHECK_THROWS_AS(dw::p_from_exp_rational(in_z(reg, "3"), in_z(reg, "2"), QuadExt(1)), dw::DomainError);
  CHECK_THROWS_AS(dw::p_from_exp_rational(in_z(reg, "z"), in_z(reg, "0"), QuadExt(1)), dw::DomainError);
  CHECK_THROWS_AS(dw::p_from_exp_rational(in_z(reg, "z"), in_z(reg, "1"), QuadExt(0)), dw::DomainError);
  CHECK_THROWS_AS(dw::p_from_exp_rational(in_z(reg, "z*w"), in_z(reg, "1"), QuadExt(1)), dw::DomainError);
}

TEST_CASE("primitive part") {
  const auto ws = dw::wave_symbols();
  // Leading grlex coefficient positive.
  CHECK(dw::primitive_part(uv(ws, "V^2 + 2/3*sqrt(6)*U*V + 2/3*(1-U)*U^2")) ==
        uv(ws, "2*U^3 - 2*U^2 - 2*sqrt(6)*U*V - 3*V^2"));
  CHECK(dw::primitive_part(uv(ws, "-4*U + 6")) == uv(ws, "2*U - 3"));
}

TEST_CASE("branch ODE of the Fisher curve") {
  const auto sys = dw::PlanarSystem::make("-y", "x^2 - x - 5/6*sqrt(6)*y");
  const MultiPoly f = dw::parse_poly("y^2 + 2/3*sqrt(6)*(1-x)*y + 2/3*x*(1-x)^2", sys.registry);
  const auto b = dw::branch_ode(f, sys.x, sys.y, +1, QuadExt(-1), QuadExt(1));
  const double A = std::sqrt(6.0) / 3.0;
  for (double u : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) {
    CHECK(b.rhs(u) == doctest::Approx(-A * (1 - std::sqrt(u)) * u).epsilon(1e-12));
  }
  CHECK(b.rhs(1.0) == doctest::Approx(0.0));
  CHECK(b.multiplicity == 1);
  CHECK(b.discriminant == dw::parse_poly("8/3*U^3", b.symbols.registry));

  const auto dbl = dw::branch_ode(dw::parse_poly("(y - x)^2", sys.registry), sys.x, sys.y, 1, QuadExt(1), QuadExt(0));
  CHECK(dbl.multiplicity == 2);
  CHECK(dbl.rhs(0.3) == doctest::Approx(0.3));
  CHECK_THROWS_AS(dw::branch_ode(dw::parse_poly("y^2 + 1", sys.registry), sys.x, sys.y, 1, QuadExt(1), QuadExt(0)),
                  dw::DomainError);
  CHECK_THROWS_AS(dw::branch_ode(dw::parse_poly("y^3 + x", sys.registry), sys.x, sys.y, 1, QuadExt(1), QuadExt(0)),
                  dw::DomainError);
}

TEST_CASE("logistic families") {
  const auto ws = dw::wave_symbols();
  const auto fam = dw::solve_logistic(Number(1), Number(0), Number(1));
  for (double t : {-3.0, 0.0, 2.0}) {
    CHECK(fam.profile(t, 2.0) == doctest::Approx(1.0 / (1.0 + 2.0 * std::exp(t))));
  }
  CHECK(fam.a == 1.0);
  CHECK(fam.b == 0.0);
  const auto ex = dw::to_exp_rational(fam.profile, QuadExt(1), QuadExt(3));
  REQUIRE(ex);
  CHECK(dw::vanishes_identically(uv(ws, "V - U*(U - 1)"), ws.U, ws.V, *ex));
  CHECK(fam.profile(0.0, 0.0) == 1.0);  // k = 0: the constant u3

  const auto rev = dw::solve_logistic(Number(-2), Number(0), Number(1));
  CHECK(rev.a == 0.0);
  CHECK(rev.b == 1.0);
  CHECK_THROWS_AS(dw::solve_logistic(Number(1), Number(2), Number(2)), dw::DomainError);

  // W' = -(A/2)(1 - W) W with A = sqrt(6)/3.
  const QuadExt half_a = QuadExt::parse("1/6*sqrt(6)");
  const auto w = dw::solve_logistic(Number(half_a), Number(0), Number(1));
  CHECK(w.profile(1.0) == doctest::Approx(1.0 / (1.0 + std::exp(1.0 / std::sqrt(6.0)))));
  const auto ew = dw::to_exp_rational(w.profile, half_a);
  REQUIRE(ew);
  CHECK(dw::vanishes_identically(uv(ws, "V + 1/6*sqrt(6)*(1 - U)*U"), ws.U, ws.V, *ew));
}

TEST_CASE("power-logistic families") {
  for (unsigned q = 1; q <= 3; ++q) {
    const double kappa = 1.0 / std::sqrt(q + 1.0);
    const auto fam = dw::solve_power_logistic(q, Number(QuadExt::sqrt_of(q + 1).inverse()));
    for (int i = -5; i <= 5; ++i) {
      const double u = fam.profile(i);
      const double up = fam.profile.derivative()(i);
      CHECK(std::abs(up - kappa * u * (std::pow(u, q) - 1.0)) < 1e-10);
      CHECK(u == doctest::Approx(std::pow(1.0 + std::exp(q * kappa * i), -1.0 / q)));
    }
    CHECK(fam.a == 1.0);
    CHECK(fam.b == 0.0);
  }
  const auto q3 = dw::solve_power_logistic(3, Number(Rat(1, 2)));
  CHECK(*q3.rate.exact == QuadExt(Rat(3, 2)));
  CHECK(q3.profile(0.4) == doctest::Approx(std::pow(1.0 + std::exp(0.6), -1.0 / 3.0)));
}

TEST_CASE("Fisher wave reconstruction") {
  const auto cert = dw::certify();
  REQUIRE(cert.passed);
  const auto wave = dw::fisher_reconstruct(*cert.curve, *cert.system, Number(cert.admissible[0].c));
  CHECK(wave.profile(0.0) == doctest::Approx(0.25));
  CHECK(wave.profile(-40.0) == doctest::Approx(1.0));
  CHECK(wave.profile(40.0) == doctest::Approx(0.0));
  CHECK(wave.profile(1.3, 2.0) == doctest::Approx(std::pow(1.0 + 2.0 * std::exp(1.3 / std::sqrt(6.0)), -2.0)));
  CHECK(wave.a == 1.0);
  CHECK(wave.b == 0.0);
  CHECK(dw::make_monic(wave.p) == dw::make_monic(uv(wave.symbols, "3*V^2 + 2*sqrt(6)*U*V + 2*(1-U)*U^2")));
  CHECK(*wave.speed.exact == QuadExt::parse("5/6*sqrt(6)"));
  const auto res = dw::wave_residual(wave);
  CHECK(res.passed);
  CHECK(res.identically_zero == true);

  dw::DarbouxResult other = *cert.curve;
  other.f = dw::parse_poly("y^2 + x*y + x^2 - 1", cert.system->registry);
  CHECK_THROWS_AS(dw::fisher_reconstruct(other, *cert.system, Number(1)), dw::DomainError);
}

TEST_CASE("graph family: Nagumo and power-logistic") {
  auto reg = dw::VarRegistry::create();
  const dw::VarId x = reg->intern("x");
  // a = 2, d = 1, u1 = 0, u2 = 1/4, u3 = 1: f = (x)(x - 1), c = 1/2.
  const auto fam = dw::family_curve(dw::parse_poly("x*(x - 1)", reg), x, MultiPoly(QuadExt(Rat(1, 2))), MultiPoly(1));
  CHECK(fam.residual_zero);
  CHECK_FALSE(fam.time_scaled);
  CHECK(fam.curve.k == dw::parse_poly("-(2*x - 1) - 1/2", fam.sys.registry));
  REQUIRE(fam.wave);
  CHECK(dw::wave_residual(*fam.wave).passed);
  CHECK(fam.wave->a == 1.0);
  CHECK(fam.wave->b == 0.0);

  // The reduced Nagumo PDE at that speed is the same planar system.
  auto pde = dw::parse_pde("u_t = a*(u - u1)*(u2 - u)*(u - u3) + d*u_xx");
  pde = dw::bind_params(pde, {{"a", QuadExt(2)}, {"d", QuadExt(1)}, {"u1", QuadExt(0)}, {"u2", QuadExt(Rat(1, 4))},
                              {"u3", QuadExt(1)}});
  const auto red = dw::to_planar(dw::travelling_wave_reduce(pde, QuadExt(Rat(1, 2))));
  CHECK(dw::substitute(red.P, {}, fam.sys.registry) == fam.sys.P);
  CHECK(dw::substitute(red.Q, {}, fam.sys.registry) == fam.sys.Q);

  for (unsigned q = 1; q <= 3; ++q) {
    const QuadExt kappa = QuadExt::sqrt_of(q + 1).inverse();
    const MultiPoly f = dw::parse_poly("x^" + std::to_string(q + 1) + " - x", reg).scaled(kappa);
    const auto pl = dw::family_curve(f, x, MultiPoly(kappa), MultiPoly(1));
    CHECK(pl.residual_zero);
    REQUIRE(pl.wave);
    CHECK(dw::wave_residual(*pl.wave).passed);
    const auto entry = dw::catalog_entry("power-logistic");
    const auto ppde = dw::parse_pde(entry.pde_for({{"q", QuadExt(static_cast<long>(q))}}));
    const auto pred = dw::to_planar(dw::travelling_wave_reduce(ppde, kappa));
    CHECK(dw::substitute(pred.Q, {}, pl.sys.registry) == pl.sys.Q);
  }

  const auto zero = dw::family_curve(MultiPoly(0).with_registry(reg), x, MultiPoly(0), MultiPoly(1));
  CHECK(zero.residual_zero);
  CHECK_FALSE(zero.wave);
  CHECK_FALSE(zero.notes.empty());
  CHECK_THROWS_AS(dw::family_curve(dw::parse_poly("x", reg), x, MultiPoly(1), MultiPoly(-1)), dw::DomainError);

  const auto cubic = dw::family_curve(dw::parse_poly("x^3 + x + 1", reg), x, MultiPoly(1), MultiPoly(2));
  CHECK(cubic.residual_zero);
  CHECK_FALSE(cubic.wave);
}

TEST_CASE("graph family symbolically up to degree 6") {
  auto reg = dw::VarRegistry::create();
  const dw::VarId x = reg->intern("x");
  std::string text = "f0";
  for (int i = 1; i <= 6; ++i) text += " + f" + std::to_string(i) + "*x^" + std::to_string(i);
  const MultiPoly f = dw::parse_poly(text, reg);
  const auto fam = dw::family_curve(f, x, dw::parse_poly("c", reg), dw::parse_poly("d", reg));
  CHECK(fam.time_scaled);
  CHECK(fam.residual_zero);
  CHECK(dw::cofactor_residual(fam.sys, fam.curve.f, fam.curve.k).is_zero());
}

TEST_CASE("catalog") {
  const auto& entries = dw::catalog();
  REQUIRE(entries.size() == 7);
  for (const auto& e : entries) {
    CAPTURE(e.name);
    CHECK_NOTHROW(dw::parse_pde(e.pde_for(dw::resolve_params(e, {}))));
    for (const auto& b : e.samples) {
      const auto w = e.build(b);
      const auto r = dw::wave_residual(w);
      CHECK_MESSAGE(r.passed, e.name << " max " << r.max_abs);
      if (e.exp_rational) CHECK(r.identically_zero == true);
    }
  }
  const auto kdv = dw::catalog_entry("kdv").build({{"c", QuadExt(4)}});
  for (double t : {-1.0, 0.0, 0.5}) CHECK(kdv.profile(t) == doctest::Approx(-2.0 / std::pow(std::cosh(t), 2)));
  const auto bq = dw::catalog_entry("boussinesq").build({{"k", QuadExt(Rat(1, 2))}, {"c", QuadExt(1)}});
  for (double t : {-1.0, 0.0, 0.5}) CHECK(bq.profile(t) == doctest::Approx(-2.0 + 3.0 * std::pow(std::tanh(t / 2), 2)));
  CHECK(bq.a == doctest::Approx(1.0));
  const auto periodic =
      dw::catalog_entry("imbq").build({{"c", QuadExt(2)}, {"k", QuadExt(Rat(1, 2))}, {"m", QuadExt(0)}});
  CHECK_FALSE(periodic.boundary_conditions);
  CHECK(std::find(periodic.notes.begin(), periodic.notes.end(), "periodic, not front") != periodic.notes.end());

  // Printed p against the resultant construction.
  auto reg = dw::VarRegistry::create();
  const auto burgers = dw::catalog_entry("burgers").build(dw::catalog_entry("burgers").defaults);
  const MultiPoly derived = dw::p_from_exp_rational(dw::parse_poly("2", reg), dw::parse_poly("1 + z^2", reg), QuadExt(Rat(1, 2)));
  CHECK(dw::make_monic(derived) == dw::make_monic(burgers.p));

  CHECK_THROWS_AS(dw::catalog_entry("nope"), dw::DomainError);
  CHECK_THROWS_AS(dw::resolve_params(dw::catalog_entry("kdv"), {{"c", QuadExt(-1)}}), dw::DomainError);
  CHECK_THROWS_AS(dw::resolve_params(dw::catalog_entry("kdv"), {{"zz", QuadExt(1)}}), dw::DomainError);
  CHECK(dw::resolve_params(dw::catalog_entry("kdv"), {{"c", QuadExt(9)}}).at("c") == QuadExt(9));
}
