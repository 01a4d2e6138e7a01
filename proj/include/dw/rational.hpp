#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dw {

/// Arbitrary-precision rational in lowest terms with positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rat(int value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(const mpz_class& value) : q_(value) {}
  explicit Rat(mpq_class value);

  /// Parses "p" or "p/q" (optional leading sign).
  static Rat parse(std::string_view text);

  const mpq_class& value() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }

  Rat abs() const;
  Rat inverse() const;
  Rat pow(unsigned exponent) const;

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;

  Rat& operator+=(const Rat& other);
  Rat& operator-=(const Rat& other);
  Rat& operator*=(const Rat& other);
  Rat& operator/=(const Rat& other);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a);

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

/// Exact square root of a nonnegative rational, if it is rational.
std::optional<Rat> rational_sqrt(const Rat& x);

/// Largest square-free divisor d of |n| such that n = s^2 * d; returns {s, d}.
struct SquareFreeSplit {
  mpz_class square_root;
  mpz_class square_free;
};
SquareFreeSplit square_free_split(const mpz_class& n);

}  // namespace dw
