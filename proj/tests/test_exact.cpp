#include <random>

#include "doctest.h"
#include "dw/combinatorics.hpp"
#include "dw/error.hpp"
#include "dw/quad_ext.hpp"

using dw::QuadExt;
using dw::Rat;

namespace {

QuadExt q(const char* text) { return QuadExt::parse(text); }

QuadExt random_element(std::mt19937& rng, dw::Radicand d) {
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 9);
  return QuadExt(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)), d);
}

}  // namespace

TEST_CASE("rationals are canonical") {
  CHECK(Rat(6, -4).to_string() == "-3/2");
  CHECK(Rat(0, 5).den() == 1);
  CHECK(Rat::parse("-10/4") == Rat(-5, 2));
  CHECK_THROWS_AS(Rat(1, 0), dw::DivisionByZero);
  CHECK(Rat(2, 3).pow(3) == Rat(8, 27));
}

TEST_CASE("field operations in Q(sqrt(6))") {
  CHECK(QuadExt(1) * QuadExt(0, 1, 6) == QuadExt(0, 1, 6));
  const QuadExt c(0, Rat(5, 6), 6);
  CHECK(c * c == QuadExt(Rat(25, 6)));
  CHECK(QuadExt(0, Rat(1, 3), 6).inverse() == QuadExt(0, Rat(1, 2), 6));
  CHECK_THROWS_AS(QuadExt(0).inverse(), dw::DivisionByZero);
  CHECK_THROWS_AS(QuadExt(0, 1, 6) + QuadExt(0, 1, 2), dw::RadicandMismatch);
  CHECK_THROWS(QuadExt(1, 1, 8));
}

TEST_CASE("exact sign") {
  CHECK(QuadExt(0, Rat(5, 6), 6).sign() == 1);
  CHECK((QuadExt(0, Rat(5, 6), 6) - QuadExt(2)).sign() == 1);  // 5/sqrt(6) > 2
  CHECK((QuadExt(0, Rat(5, 6), 6) - QuadExt(Rat(205, 100))).sign() == -1);
  CHECK(QuadExt(Rat(-7), Rat(3), 5).sign() == -1);  // 3 sqrt(5) = 6.7 < 7
  CHECK(QuadExt(Rat(7), Rat(-3), 5).sign() == 1);
}

TEST_CASE("try_sqrt") {
  auto r = dw::try_sqrt(Rat(49, 6), 6);
  REQUIRE(r);
  CHECK(r->abs() == QuadExt(0, Rat(7, 6), 6));
  CHECK(dw::try_sqrt(Rat(4), 6)->abs() == QuadExt(2));
  CHECK_FALSE(dw::try_sqrt(Rat(5), 6));
  CHECK(dw::try_sqrt(Rat(8), 2)->abs() == QuadExt(0, 2, 2));
}

TEST_CASE("text round trip") {
  for (const char* text : {"0", "-3/2", "5/6*sqrt(6)", "1/2 - 3/4*sqrt(6)", "-sqrt(2)", "2 + sqrt(3)"}) {
    CHECK(q(text).to_string() == text);
  }
  CHECK(q("5/6*sqrt(6)") == QuadExt(0, Rat(5, 6), 6));
  CHECK(q("sqrt(24)") == QuadExt(0, 2, 6));
  CHECK_THROWS_AS(q("x + 1"), dw::ParseError);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(7);
  for (dw::Radicand d : {1, 2, 6, 41}) {
    for (int i = 0; i < 200; ++i) {
      const QuadExt x = d == 1 ? QuadExt(random_element(rng, 2).rational_part()) : random_element(rng, d);
      const QuadExt y = d == 1 ? QuadExt(random_element(rng, 2).rational_part()) : random_element(rng, d);
      const QuadExt z = d == 1 ? QuadExt(random_element(rng, 2).radical_part()) : random_element(rng, d);
      CHECK((x + y) * z == x * z + y * z);
      CHECK((x * y) * z == x * (y * z));
      if (!y.is_zero()) CHECK((x * y) * y.inverse() == x);
      const auto s = dw::try_sqrt(x * x);
      if (x.is_rational() || x.rational_part().is_zero()) {
        REQUIRE(s);
        CHECK(s->abs() == x.abs());
      }
    }
  }
}

TEST_CASE("pochhammer") {
  CHECK(dw::pochhammer(Rat(1, 3), 1) == Rat(1, 3));
  CHECK(dw::pochhammer(Rat(5, 6), 2) == Rat(55, 36));
  CHECK(dw::pochhammer(Rat(3, 7), 0) == Rat(1));
  CHECK(dw::gamma_ratio(Rat(1, 3), 3) == Rat(28, 27));
  CHECK(dw::gamma_ratio(Rat(1), 6) == Rat(720));
  CHECK(dw::gamma_ratio(Rat(5, 6), 1) == Rat(5, 6));
  for (int num = -12; num <= 12; num += 5) {
    const Rat x(num, 7);
    for (unsigned m = 0; m < 50; ++m) CHECK(dw::pochhammer(x, m + 1) == dw::pochhammer(x, m) * (x + Rat(static_cast<long>(m))));
  }
  CHECK(dw::binomial(10, 3) == 120);
  CHECK(dw::binomial(3, 5) == 0);
}
