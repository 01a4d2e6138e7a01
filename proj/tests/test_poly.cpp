#include <random>

#include "doctest.h"
#include "dw/error.hpp"
#include "dw/poly.hpp"
#include "dw/poly_parse.hpp"
#include "dw/resultant.hpp"
#include "test_support.hpp"

using dw::MultiPoly;
using dw::QuadExt;
using dw::Rat;

namespace {

struct XY {
  dw::RegistryPtr reg = dw::VarRegistry::create();
  dw::VarId x = reg->intern("x");
  dw::VarId y = reg->intern("y");
  MultiPoly operator()(const char* text) const { return dw::parse_poly(text, reg); }
};

constexpr const char* kCurve = "y^2 + 2/3*sqrt(6)*(1-x)*y + 2/3*x*(1-x)^2";

}  // namespace

TEST_CASE("arithmetic") {
  XY p;
  CHECK((p("x + y")).pow(2) == p("x^2 + 2*x*y + y^2"));
  CHECK((p("x - 1") * MultiPoly(0)).is_zero());
  CHECK((p("x - 1") * MultiPoly(0)).term_count() == 0);
  CHECK(p("(y^2 + x)*(y^2 - x)") == p("y^4 - x^2"));
  CHECK(p("x - x").is_zero());
}

TEST_CASE("canonical text") {
  XY p;
  CHECK(p(kCurve).to_string() == "2/3*x^3 - 4/3*x^2 - 2/3*sqrt(6)*x*y + y^2 + 2/3*x + 2/3*sqrt(6)*y");
  CHECK(p("0").to_string() == "0");
  CHECK(p("(1 + sqrt(2))*x - 3/2").to_string() == "(1 + sqrt(2))*x - 3/2");
  CHECK(p("-y").to_string() == "-y");
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const MultiPoly f = dwtest::random_poly(rng, p.reg, {p.x, p.y}, 4, 5, 6);
    CHECK(dw::parse_poly(f.to_string(), p.reg) == f);
  }
}

TEST_CASE("parse errors carry positions") {
  XY p;
  try {
    p("x + 1/y");
    FAIL("expected ParseError");
  } catch (const dw::ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
    CHECK(std::string(e.what()).find("non-polynomial") != std::string::npos);
  }
  CHECK_THROWS_AS(p("x^(1/2)"), dw::ParseError);
  CHECK_THROWS_AS(p("x^-1"), dw::ParseError);
  CHECK_THROWS_AS(p("0.5*x"), dw::ParseError);
  CHECK_THROWS_AS(p("x y"), dw::ParseError);
  CHECK_THROWS_AS(p("(x"), dw::ParseError);
  CHECK(p("x^2/3") == p("1/3*x^2"));
}

TEST_CASE("partial derivatives") {
  XY p;
  CHECK(dw::partial_derivative(p(kCurve), p.y) == p("2*y + 2/3*sqrt(6)*(1-x)"));
  CHECK(dw::partial_derivative(p("7"), p.x).is_zero());
  CHECK(dw::partial_derivative(p("x^3*y"), p.x) == p("3*x^2*y"));
}

TEST_CASE("substitution and evaluation") {
  XY p;
  auto uv = dw::VarRegistry::create();
  const MultiPoly U = MultiPoly::variable(uv, "U");
  const MultiPoly V = MultiPoly::variable(uv, "V");
  const MultiPoly g = dw::substitute(p(kCurve), {{p.x, MultiPoly(1) - U}, {p.y, V}}, uv);
  CHECK(g == dw::parse_poly("V^2 + 2/3*sqrt(6)*U*V + 2/3*(1-U)*U^2", uv));
  CHECK(g.scaled(QuadExt(3)) == dw::parse_poly("3*V^2 + 2*sqrt(6)*U*V + 2*(1-U)*U^2", uv));
  CHECK(dw::substitute(p(kCurve), {{p.x, p("x")}, {p.y, p("y")}}) == p(kCurve));
  CHECK(dw::substitute(p("x^2"), {{p.x, p("y + 1")}}) == p("y^2 + 2*y + 1"));

  CHECK(dw::evaluate(p(kCurve), {{p.x, 0}, {p.y, 0}}).is_zero());
  CHECK(dw::evaluate(p(kCurve), {{p.x, 1}, {p.y, 0}}).is_zero());
  CHECK(dw::evaluate(p("x + y"), {{p.x, 2}, {p.y, 3}}) == QuadExt(5));
  CHECK_THROWS(dw::evaluate(p("x + y"), {{p.x, 2}}));
  CHECK(dw::evaluate_float(p(kCurve), {{p.x, 0.5}, {p.y, 0.25}}) ==
        doctest::Approx(0.0625 + 2.0 / 3.0 * std::sqrt(6.0) * 0.125 + 2.0 / 3.0 * 0.125));
}

TEST_CASE("univariate view") {
  XY p;
  const auto c = dw::as_univariate(p(kCurve), p.y);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == p("2/3*x*(1-x)^2"));
  CHECK(c[1] == p("2/3*sqrt(6)*(1-x)"));
  CHECK(c[2] == p("1"));
  CHECK(dw::as_univariate(p("5"), p.y).size() == 1);
  const auto cube = dw::as_univariate(p("y^3"), p.y);
  REQUIRE(cube.size() == 4);
  CHECK((cube[0].is_zero() && cube[1].is_zero() && cube[2].is_zero() && cube[3] == p("1")));
  CHECK(dw::from_univariate(c, p.reg, p.y) == p(kCurve));
}

TEST_CASE("sylvester resultant") {
  auto reg = dw::VarRegistry::create();
  auto P = [&](const char* t) { return dw::parse_poly(t, reg); };
  const dw::VarId x = reg->intern("x");
  CHECK(dw::sylvester_resultant(P("x - y"), P("x^2 - 2"), x) == P("y^2 - 2"));
  CHECK(dw::sylvester_resultant(P("x - a"), P("x - b"), x) == P("a - b"));
  CHECK_THROWS_AS(dw::sylvester_resultant(P("y"), P("x - 1"), x), dw::DomainError);

  std::mt19937 rng(5);
  const dw::VarId y = *reg->find("y");
  for (int i = 0; i < 30; ++i) {
    const MultiPoly common = P("x") - dwtest::random_poly(rng, reg, {y}, 2, 2);
    const MultiPoly r = dwtest::random_poly(rng, reg, {x, y}, 2, 3) + P("x^2");
    const MultiPoly s = dwtest::random_poly(rng, reg, {x, y}, 2, 3) + P("x^3");
    CHECK(dw::sylvester_resultant(common * r, common * s, x).is_zero());
  }
  // x^2 + 1 and x - y share a root only where y^2 + 1 = 0.
  CHECK(dw::sylvester_resultant(P("x^2 + 1"), P("x - y"), x) == P("y^2 + 1"));
}

TEST_CASE("trial division") {
  XY p;
  CHECK(*dw::trial_divide(p("x^2 - y^2"), p("x - y")) == p("x + y"));
  CHECK_FALSE(dw::trial_divide(p("x^2 + 1"), p("x - y")));
  CHECK_FALSE(dw::trial_divide(p(kCurve), p("y")));
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    const MultiPoly q = dwtest::random_poly(rng, p.reg, {p.x, p.y}, 3, 4, 6);
    MultiPoly g = dwtest::random_poly(rng, p.reg, {p.x, p.y}, 3, 3, 6);
    if (g.is_zero()) g = p("1 + x");
    auto got = dw::trial_divide(q * g, g);
    REQUIRE(got);
    CHECK(*got == q);
  }
}

TEST_CASE("ring properties on random polynomials") {
  auto reg = dw::VarRegistry::create();
  const std::vector<dw::VarId> vars{reg->intern("a"), reg->intern("b"), reg->intern("z")};
  std::mt19937 rng(19);
  for (int i = 0; i < 60; ++i) {
    const MultiPoly f = dwtest::random_poly(rng, reg, vars, 4, 4, 2);
    const MultiPoly g = dwtest::random_poly(rng, reg, vars, 4, 4, 2);
    const MultiPoly h = dwtest::random_poly(rng, reg, vars, 3, 3, 2);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f + g == g + f);
    for (dw::VarId v : vars) {
      CHECK(dw::partial_derivative(f * g, v) == f * dw::partial_derivative(g, v) + g * dw::partial_derivative(f, v));
    }
    // evaluate(substitute(f, b), pt) = evaluate(f, evaluate(b, pt))
    const std::map<dw::VarId, MultiPoly> b{{vars[0], g}, {vars[1], h}};
    const std::map<dw::VarId, QuadExt> pt{{vars[0], Rat(1, 2)}, {vars[1], Rat(-3)}, {vars[2], QuadExt(1, 1, 2)}};
    std::map<dw::VarId, QuadExt> image{{vars[0], dw::evaluate(g, pt)}, {vars[1], dw::evaluate(h, pt)}, {vars[2], pt.at(vars[2])}};
    CHECK(dw::evaluate(dw::substitute(f, b), pt) == dw::evaluate(f, image));
    // Horner agrees with exact evaluation.
    const std::vector<double> values{0.5, -3.0, 1.0 + std::sqrt(2.0)};
    const dw::HornerPoly horner(f, vars);
    CHECK(horner(values) == doctest::Approx(dw::evaluate(f, pt).to_double()).epsilon(1e-12));
  }
}

TEST_CASE("registries must agree") {
  XY a, b;
  CHECK_THROWS_AS(a("x") + b("x"), dw::RegistryMismatch);
  CHECK_NOTHROW(a("x") + MultiPoly(3));
}
