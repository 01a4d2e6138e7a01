#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dw/poly.hpp"

namespace dw {

/// Real constant with an optional exact value in Q(sqrt(d)).
struct Number {
  double value = 0.0;
  std::optional<QuadExt> exact;

  Number() = default;
  Number(double v) : value(v) {}  // NOLINT(google-explicit-constructor)
  Number(const QuadExt& q) : value(q.to_double()), exact(q) {}  // NOLINT(google-explicit-constructor)
  Number(long v) : Number(QuadExt(v)) {}  // NOLINT(google-explicit-constructor)
  Number(int v) : Number(QuadExt(v)) {}   // NOLINT(google-explicit-constructor)
};

/// Exact square root when it exists in the field of q, else a float.
Number sqrt_number(const QuadExt& q);

/// Univariate expression tree. The leaf `var()` is the wave variable s for
/// profiles and the dependent value for branch right-hand sides; `k()` is the
/// free family parameter, bound at evaluation time.
class ClosedForm {
 public:
  enum class Op { Var, K, Const, Add, Sub, Mul, Div, PowInt, PowReal, Exp, Tanh, Cosh, Sinh, Sqrt, Cn };

  ClosedForm();  // the constant 0
  ClosedForm(const Number& c);  // NOLINT(google-explicit-constructor)
  ClosedForm(long c) : ClosedForm(Number(c)) {}  // NOLINT(google-explicit-constructor)
  ClosedForm(int c) : ClosedForm(Number(c)) {}   // NOLINT(google-explicit-constructor)
  ClosedForm(const Rat& c) : ClosedForm(Number(QuadExt(c))) {}  // NOLINT(google-explicit-constructor)

  static ClosedForm var();
  static ClosedForm k();
  /// Horner form of a univariate polynomial in v.
  static ClosedForm from_poly(const MultiPoly& p, VarId v);

  Op op() const;
  const std::vector<ClosedForm>& children() const;
  const Number& constant() const;  // Const
  int int_exponent() const;        // PowInt
  const Rat& real_exponent() const;  // PowReal
  double modulus() const;          // Cn

  ClosedForm pow(int n) const;
  ClosedForm pow(const Rat& p) const;
  friend ClosedForm operator+(const ClosedForm& a, const ClosedForm& b);
  friend ClosedForm operator-(const ClosedForm& a, const ClosedForm& b);
  friend ClosedForm operator*(const ClosedForm& a, const ClosedForm& b);
  friend ClosedForm operator/(const ClosedForm& a, const ClosedForm& b);
  friend ClosedForm operator-(const ClosedForm& a);
  friend ClosedForm exp(const ClosedForm& a);
  friend ClosedForm tanh(const ClosedForm& a);
  friend ClosedForm cosh(const ClosedForm& a);
  friend ClosedForm sinh(const ClosedForm& a);
  friend ClosedForm sqrt(const ClosedForm& a);
  /// Jacobi cn with parameter m in [0, 1].
  friend ClosedForm jacobi_cn(const ClosedForm& a, double m);

  bool is_constant() const;
  bool is_zero() const;
  /// False when a cn node is present.
  bool has_symbolic_derivative() const;
  /// d/dvar; throws DomainError for cn.
  ClosedForm derivative() const;

  /// Value at var = s, k = k; may be NaN outside the real domain.
  double operator()(double s, double k = 1.0) const;
  /// order-th derivative at s: symbolic when possible, else central
  /// differences with Richardson extrapolation.
  double derivative_at(double s, unsigned order, double k = 1.0) const;

  std::string to_string() const;

 private:
  struct Node;
  explicit ClosedForm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static ClosedForm make(Op op, std::vector<ClosedForm> children);

  std::shared_ptr<const Node> node_;
};

/// F(z) = num / den with z = exp(mu * var).
struct ExpRational {
  RegistryPtr registry;  // "z"
  VarId z = 0;
  QuadExt mu;
  MultiPoly num;
  MultiPoly den;

  /// d/dvar = mu z d/dz.
  ExpRational derivative() const;
};

/// Normal form in the exp-rational fragment, with k bound to an exact value.
/// nullopt when the expression leaves the fragment (sqrt, real powers, cn,
/// bare var, exponents that are not integer multiples of mu, inexact constants).
std::optional<ExpRational> to_exp_rational(const ClosedForm& f, const QuadExt& mu, const QuadExt& k = QuadExt(1));

/// p(U, U') == 0 identically for U in the exp-rational fragment. p must be a
/// polynomial in exactly the variables u and v of its registry.
bool vanishes_identically(const MultiPoly& p, VarId u, VarId v, const ExpRational& U);

}  // namespace dw
