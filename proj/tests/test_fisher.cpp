#include <chrono>

#include "doctest.h"
#include "dw/fisher.hpp"
#include "dw/poly_parse.hpp"

using dw::MultiPoly;
using dw::QuadExt;
using dw::Rat;

namespace {

MultiPoly sym(const dw::LeadingCoeffTable& t, const char* text) { return dw::parse_poly(text, t.registry); }

}  // namespace

TEST_CASE("recurrence tables for m = 1, 2") {
  const auto t1 = dw::leading_coeffs_recurrence(1);
  REQUIRE(t1.a.size() == 3);
  CHECK(t1.a[2] == sym(t1, "1"));
  CHECK(t1.a[1] == sym(t1, "-(c0 + 2*c)"));
  CHECK(t1.a[0] == sym(t1, "2/3"));

  const auto t2 = dw::leading_coeffs_recurrence(2);
  REQUIRE(t2.a.size() == 5);
  CHECK(t2.a[4] == sym(t2, "1"));
  CHECK(t2.a[3] == sym(t2, "-(c0 + 4*c)"));
  CHECK(t2.a[2] == sym(t2, "4/3"));
  CHECK(t2.a[1] == sym(t2, "-13/12*c0 - 11/3*c"));
  CHECK(t2.a[0] == sym(t2, "4/9"));
}

TEST_CASE("closed forms") {
  CHECK(dw::gamma_m(1) == Rat(5, 2));
  CHECK(dw::gamma_m(2) == Rat(55, 16));
  const auto symbols = dw::fisher_symbols();
  const auto c1 = dw::leading_coeffs_closed_form(1, symbols);
  CHECK(c1.a0 == Rat(2, 3));
  CHECK(c1.a1 == dw::parse_poly("-c0 - 2*c", symbols));
  CHECK(dw::even_coefficient(2, 1) == Rat(4, 3));
  for (unsigned m = 1; m < 30; ++m) {
    CHECK(dw::gamma_m(m) > Rat(1));
    CHECK(dw::gamma_m(m + 1) > dw::gamma_m(m));
  }
}

TEST_CASE("recurrence agrees with the closed forms for m <= 20") {
  const auto symbols = dw::fisher_symbols();
  for (unsigned m = 1; m <= 20; ++m) {
    const auto t = dw::leading_coeffs_recurrence(m, symbols);
    CHECK(t.a[2 * m] == MultiPoly(1));
    CHECK(t.a[2 * m - 1] == dw::parse_poly("-(c0 + " + std::to_string(2 * m) + "*c)", symbols));
    for (unsigned j = 0; j <= m; ++j) {
      CHECK(t.a[2 * m - 2 * j] == MultiPoly(QuadExt(dw::even_coefficient(m, j))));
    }
    const auto cf = dw::leading_coeffs_closed_form(m, symbols);
    CHECK(t.a[0] == MultiPoly(QuadExt(cf.a0)));
    CHECK(t.a[1] == cf.a1);
  }
}

TEST_CASE("rising factorial identities") {
  const auto checks = dw::verify_gamma_identities(10);
  REQUIRE(checks.size() == 10);
  for (const auto& c : checks) {
    CHECK(c.vandermonde);
    CHECK(c.weighted);
  }
  auto reg = dw::VarRegistry::create();
  const MultiPoly x = dw::parse_poly("x + y", reg);
  CHECK(dw::rising_factorial(x, 2) == dw::parse_poly("(x+y)*(x+y+1)", reg));
  CHECK(dw::rising_factorial(x, 0) == MultiPoly(1));
}

TEST_CASE("consistency condition") {
  const auto m1 = dw::consistency_condition(1, dw::CofactorChoice::LambdaMinus);
  CHECK(m1.c_squared == Rat(25, 6));
  CHECK(m1.c == QuadExt::parse("5/6*sqrt(6)"));
  CHECK(m1.c0 == QuadExt::parse("-sqrt(6)"));
  CHECK(m1.admissible);
  CHECK(m1.c.to_double() == doctest::Approx(2.0412414523193151));

  const auto m2 = dw::consistency_condition(2, dw::CofactorChoice::LambdaMinus);
  CHECK(m2.c_squared == Rat(25, 84));
  CHECK_FALSE(m2.admissible);

  const auto plus = dw::consistency_condition(1, dw::CofactorChoice::LambdaPlus);
  CHECK(plus.c_squared == Rat(25, 6));
  CHECK(plus.c.sign() < 0);
  CHECK_FALSE(plus.admissible);

  for (unsigned m = 1; m <= 100; ++m) {
    const auto sum = dw::consistency_condition(m, dw::CofactorChoice::LambdaSum);
    CHECK_FALSE(sum.admissible);
    for (auto choice : {dw::CofactorChoice::LambdaPlus, dw::CofactorChoice::LambdaMinus}) {
      const auto s = dw::consistency_condition(m, choice);
      CHECK(s.c_squared == Rat(25, static_cast<long>(6 * m * (6 * m - 5))));
      CHECK(s.c * s.c == QuadExt(s.c_squared));
      CHECK((QuadExt(5) * s.c0 + QuadExt(Rat(static_cast<long>(6 * m))) * s.c).is_zero());
      CHECK(s.admissible == (m == 1 && choice == dw::CofactorChoice::LambdaMinus));
    }
  }
}

TEST_CASE("certify: default run") {
  const auto start = std::chrono::steady_clock::now();
  const auto cert = dw::certify();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(seconds < 10.0);
  REQUIRE(cert.passed);
  CHECK_FALSE(cert.negative);
  REQUIRE(cert.stages.size() == 5);
  for (const auto& s : cert.stages) CHECK_MESSAGE(s.passed, s.name << ": " << s.diagnostics);
  REQUIRE(cert.admissible.size() == 1);
  CHECK(cert.admissible[0].c_squared == Rat(25, 6));
  REQUIRE(cert.curve);
  REQUIRE(cert.system);
  const auto& sys = *cert.system;
  const MultiPoly& f = cert.curve->f;
  auto coeff = [&](const char* mono) { return f.coefficient(dw::parse_poly(mono, sys.registry).terms().begin()->first); };
  CHECK(coeff("y^2") == QuadExt(1));
  CHECK(coeff("y") == QuadExt::parse("2/3*sqrt(6)"));   // 2 sqrt(2/3)
  CHECK(coeff("x*y") == QuadExt::parse("-2/3*sqrt(6)"));
  CHECK(coeff("x") == QuadExt(Rat(2, 3)));
  CHECK(coeff("x^2") == QuadExt(Rat(-4, 3)));
  CHECK(coeff("x^3") == QuadExt(Rat(2, 3)));
  CHECK(f.terms().size() == 6);
  CHECK(cert.nullspace_dim == 1);
  CHECK(cert.leading_coefficients_ok);
  CHECK(cert.degree_flags.empty());
  CHECK(cert.residual_zero);
  CHECK(cert.p_matches);
}

TEST_CASE("certify: negative and failing runs") {
  dw::CertifyOptions from2;
  from2.m_min = 2;
  const auto negative = dw::certify(from2);
  CHECK(negative.negative);
  CHECK_FALSE(negative.passed);
  CHECK(negative.admissible.empty());

  dw::CertifyOptions rational;
  rational.radicand = 1;
  const auto failed = dw::certify(rational);
  CHECK_FALSE(failed.passed);
  CHECK_FALSE(failed.negative);
  REQUIRE(failed.stages.size() == 4);
  CHECK(failed.stages[3].name == "darboux-solve");
  CHECK_FALSE(failed.stages[3].passed);
  CHECK(failed.stages[3].diagnostics.find("sqrt(1)") != std::string::npos);
}
