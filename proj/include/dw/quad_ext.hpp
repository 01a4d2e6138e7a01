#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dw/rational.hpp"

namespace dw {

using Radicand = std::int64_t;

/// Element a + b*sqrt(d) of the quadratic field Q(sqrt(d)), d square-free.
///
/// d = 1 is plain Q and then b is always zero. Binary operations require equal
/// radicands, except that a d = 1 operand adopts the radicand of the other one.
/// Arithmetic never changes d otherwise.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rat& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExt(long a) : a_(a) {}        // NOLINT(google-explicit-constructor)
  QuadExt(int a) : a_(a) {}         // NOLINT(google-explicit-constructor)
  /// Throws dw::Error if d is not a positive square-free integer or d = 1 with b != 0.
  QuadExt(const Rat& a, const Rat& b, Radicand d);

  /// sqrt(n) for a positive integer n, written as s*sqrt(squarefree(n)).
  static QuadExt sqrt_of(const mpz_class& n);

  /// Parses the textual form produced by to_string(), e.g. "1/2 - 3/4*sqrt(6)".
  static QuadExt parse(std::string_view text);

  const Rat& rational_part() const { return a_; }
  const Rat& radical_part() const { return b_; }
  Radicand radicand() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  bool is_one() const { return b_.is_zero() && a_ == Rat(1); }

  /// Exact sign of a + b*sqrt(d).
  int sign() const;
  double to_double() const;

  /// a^2 - d*b^2.
  Rat norm() const;
  QuadExt conjugate() const;
  QuadExt inverse() const;
  QuadExt pow(unsigned exponent) const;
  QuadExt abs() const { return sign() < 0 ? -*this : *this; }

  /// Same value viewed in Q(sqrt(d)); only allowed for rational values or equal d.
  QuadExt with_radicand(Radicand d) const;

  std::string to_string() const;

  QuadExt& operator+=(const QuadExt& other);
  QuadExt& operator-=(const QuadExt& other);
  QuadExt& operator*=(const QuadExt& other);
  QuadExt& operator/=(const QuadExt& other);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend QuadExt operator-(const QuadExt& x);

  friend bool operator==(const QuadExt& x, const QuadExt& y);
  friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadExt& x, const QuadExt& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() >= 0; }

 private:
  Rat a_;
  Rat b_;
  Radicand d_ = 1;
};

/// Common radicand of two values, or RadicandMismatch.
Radicand join_radicand(Radicand d1, Radicand d2);

/// Square root inside the field of x.
///
/// Only rational x are attempted: returns r when x = r^2 or r*sqrt(d) when
/// x = r^2 * d, with d = x.radicand(). Otherwise nullopt.
std::optional<QuadExt> try_sqrt(const QuadExt& x);
/// Same, but in Q(sqrt(d)) for a rational x.
std::optional<QuadExt> try_sqrt(const Rat& x, Radicand d);

}  // namespace dw
