#include "dw/quad_ext.hpp"

#include <cmath>

#include "dw/error.hpp"
#include "dw/poly_parse.hpp"

namespace dw {

QuadExt::QuadExt(const Rat& a, const Rat& b, Radicand d) : a_(a), b_(b), d_(d) {
  if (d < 1) throw Error("radicand must be a positive square-free integer");
  if (d > 1) {
    const auto split = square_free_split(mpz_class(static_cast<long>(d)));
    if (split.square_root != 1) {
      throw Error("radicand " + std::to_string(d) + " is not square-free");
    }
  } else if (!b.is_zero()) {
    throw Error("radical part must be zero when radicand is 1");
  }
}

QuadExt QuadExt::sqrt_of(const mpz_class& n) {
  if (n < 0) throw DomainError("sqrt of a negative integer");
  const auto split = square_free_split(n);
  if (split.square_free <= 1) return QuadExt(Rat(split.square_root));
  if (!split.square_free.fits_slong_p()) throw Error("radicand too large");
  return QuadExt(Rat(0), Rat(split.square_root), split.square_free.get_si());
}

QuadExt QuadExt::parse(std::string_view text) { return parse_constant(text); }

Radicand join_radicand(Radicand d1, Radicand d2) {
  if (d1 == d2 || d2 == 1) return d1;
  if (d1 == 1) return d2;
  throw RadicandMismatch(d1, d2);
}

int QuadExt::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 against d*b^2.
  const Rat lhs = a_ * a_;
  const Rat rhs = b_ * b_ * Rat(static_cast<long>(d_));
  return lhs > rhs ? sa : sb;
}

double QuadExt::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(d_));
}

Rat QuadExt::norm() const { return a_ * a_ - b_ * b_ * Rat(static_cast<long>(d_)); }

QuadExt QuadExt::conjugate() const {
  QuadExt r = *this;
  r.b_ = -b_;
  return r;
}

QuadExt QuadExt::inverse() const {
  const Rat n = norm();
  if (n.is_zero()) throw DivisionByZero();
  QuadExt r;
  r.a_ = a_ / n;
  r.b_ = -b_ / n;
  r.d_ = d_;
  return r;
}

QuadExt QuadExt::pow(unsigned exponent) const {
  QuadExt result = QuadExt(1).with_radicand(d_);
  QuadExt base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

QuadExt QuadExt::with_radicand(Radicand d) const {
  if (d == d_) return *this;
  if (!b_.is_zero()) throw RadicandMismatch(d_, d);
  if (d < 1) throw Error("radicand must be a positive square-free integer");
  QuadExt r = *this;
  r.d_ = d;
  return r;
}

std::string QuadExt::to_string() const {
  if (b_.is_zero()) return a_.to_string();
  const std::string radical = "sqrt(" + std::to_string(d_) + ")";
  std::string b_text;
  if (b_.abs() == Rat(1)) {
    b_text = radical;
  } else {
    b_text = b_.abs().to_string() + "*" + radical;
  }
  if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + b_text;
  return a_.to_string() + (b_.sign() < 0 ? " - " : " + ") + b_text;
}

QuadExt& QuadExt::operator+=(const QuadExt& other) {
  d_ = join_radicand(d_, other.d_);
  a_ += other.a_;
  b_ += other.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& other) {
  d_ = join_radicand(d_, other.d_);
  a_ -= other.a_;
  b_ -= other.b_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& other) {
  d_ = join_radicand(d_, other.d_);
  const Rat a = a_ * other.a_ + b_ * other.b_ * Rat(static_cast<long>(d_));
  const Rat b = a_ * other.b_ + b_ * other.a_;
  a_ = a;
  b_ = b;
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& other) {
  d_ = join_radicand(d_, other.d_);
  if (other.is_zero()) throw DivisionByZero();
  if (other.b_.is_zero()) {
    a_ /= other.a_;
    b_ /= other.a_;
    return *this;
  }
  return *this *= other.inverse();
}

QuadExt operator-(const QuadExt& x) {
  QuadExt r = x;
  r.a_ = -x.a_;
  r.b_ = -x.b_;
  return r;
}

bool operator==(const QuadExt& x, const QuadExt& y) {
  if (!(x.a_ == y.a_) || !(x.b_ == y.b_)) return false;
  return x.b_.is_zero() || x.d_ == y.d_;
}

std::optional<QuadExt> try_sqrt(const Rat& x, Radicand d) {
  if (x.sign() < 0) return std::nullopt;
  if (auto r = rational_sqrt(x)) return QuadExt(*r).with_radicand(d);
  if (d == 1) return std::nullopt;
  if (auto r = rational_sqrt(x / Rat(static_cast<long>(d)))) return QuadExt(Rat(0), *r, d);
  return std::nullopt;
}

std::optional<QuadExt> try_sqrt(const QuadExt& x) {
  if (!x.is_rational()) return std::nullopt;
  return try_sqrt(x.rational_part(), x.radicand());
}

}  // namespace dw
