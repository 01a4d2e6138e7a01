#include "dw/rational.hpp"

#include <cctype>

#include "dw/error.hpp"

namespace dw {

Rat::Rat(long num, long den) : q_(num, den) {
  if (den == 0) throw DivisionByZero();
  q_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero();
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat::Rat(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

Rat Rat::parse(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    }
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw Error("invalid rational literal '" + s + "'");
  }
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  return Rat(mpz_class(num), mpz_class(den));
}

Rat Rat::abs() const { return sign() < 0 ? -*this : *this; }

Rat Rat::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return Rat(mpq_class(1) / q_);
}

Rat Rat::pow(unsigned exponent) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), exponent);
  return Rat(n, d);
}

std::string Rat::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rat& Rat::operator+=(const Rat& other) {
  q_ += other.q_;
  return *this;
}
Rat& Rat::operator-=(const Rat& other) {
  q_ -= other.q_;
  return *this;
}
Rat& Rat::operator*=(const Rat& other) {
  q_ *= other.q_;
  return *this;
}
Rat& Rat::operator/=(const Rat& other) {
  if (other.is_zero()) throw DivisionByZero();
  q_ /= other.q_;
  return *this;
}

Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

std::optional<Rat> rational_sqrt(const Rat& x) {
  if (x.sign() < 0) return std::nullopt;
  const mpz_class n = x.num();
  const mpz_class d = x.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  return Rat(sqrt(n), sqrt(d));
}

SquareFreeSplit square_free_split(const mpz_class& n) {
  mpz_class rest = abs(n);
  mpz_class root = 1;
  mpz_class free_part = 1;
  if (rest == 0) return {0, 0};
  // Trial division is adequate: radicands here are discriminants of small systems.
  for (mpz_class p = 2; p * p <= rest; ++p) {
    unsigned count = 0;
    while (rest % p == 0) {
      rest /= p;
      ++count;
    }
    for (unsigned i = 0; i < count / 2; ++i) root *= p;
    if (count % 2 == 1) free_part *= p;
  }
  free_part *= rest;
  return {root, free_part};
}

}  // namespace dw
