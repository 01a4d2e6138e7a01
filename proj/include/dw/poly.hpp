#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dw/quad_ext.hpp"

namespace dw {

using VarId = std::uint32_t;

/// Append-only table of variable names. Reads may happen concurrently with appends.
class VarRegistry {
 public:
  static std::shared_ptr<VarRegistry> create() { return std::make_shared<VarRegistry>(); }

  /// Index of `name`, appending it if new.
  VarId intern(std::string_view name);
  std::optional<VarId> find(std::string_view name) const;
  std::string name(VarId id) const;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::vector<std::string> names_;
  std::map<std::string, VarId, std::less<>> index_;
};

using RegistryPtr = std::shared_ptr<VarRegistry>;

/// Power product; exponents are stored sorted by variable and never zero.
class Monomial {
 public:
  using Factor = std::pair<VarId, unsigned>;

  Monomial() = default;
  static Monomial var(VarId v, unsigned exponent = 1);
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned exponent(VarId v) const;
  unsigned total_degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }

  bool divides(const Monomial& other) const;
  /// this / other; requires other.divides(*this).
  Monomial quotient(const Monomial& other) const;
  Monomial without(VarId v) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

/// Graded lexicographic comparison; ties broken by variable index (lower index is more significant).
int grlex_compare(const Monomial& a, const Monomial& b);

struct GrLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

/// Sparse multivariate polynomial over Q(sqrt(d)).
///
/// Terms are kept in descending graded-lex order, so terms().begin() is the
/// leading term. Zero coefficients are never stored. A polynomial without
/// variables may have no registry; it adopts the registry of whatever it is
/// combined with.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, QuadExt, GrLexGreater>;

  MultiPoly() = default;
  MultiPoly(const QuadExt& constant);  // NOLINT(google-explicit-constructor)
  MultiPoly(const Rat& constant) : MultiPoly(QuadExt(constant)) {}  // NOLINT
  MultiPoly(long constant) : MultiPoly(QuadExt(constant)) {}        // NOLINT
  MultiPoly(int constant) : MultiPoly(QuadExt(constant)) {}         // NOLINT

  static MultiPoly variable(const RegistryPtr& registry, VarId v);
  static MultiPoly variable(const RegistryPtr& registry, std::string_view name);
  static MultiPoly term(const RegistryPtr& registry, const Monomial& m, const QuadExt& c);

  const RegistryPtr& registry() const { return registry_; }
  /// Same polynomial attached to `registry` (only valid if compatible).
  MultiPoly with_registry(const RegistryPtr& registry) const;

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  QuadExt constant_term() const;
  QuadExt coefficient(const Monomial& m) const;

  /// Total degree; 0 for constants and for the zero polynomial.
  unsigned total_degree() const;
  unsigned degree(VarId v) const;
  bool depends_on(VarId v) const { return degree(v) > 0; }
  std::vector<VarId> variables() const;
  const Monomial& leading_monomial() const;
  const QuadExt& leading_coefficient() const;
  Radicand radicand() const;

  MultiPoly pow(unsigned exponent) const;
  MultiPoly scaled(const QuadExt& factor) const;

  std::string to_string() const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const QuadExt& c);
  void adopt_registry(const RegistryPtr& other);

  RegistryPtr registry_;
  TermMap terms_;
};

/// Registry shared by a and b (either may be null); throws RegistryMismatch otherwise.
RegistryPtr merge_registries(const RegistryPtr& a, const RegistryPtr& b);

MultiPoly partial_derivative(const MultiPoly& p, VarId v);

/// Simultaneous substitution. Unbound variables are carried over by name into
/// `target` (defaults to the registry of p).
MultiPoly substitute(const MultiPoly& p, const std::map<VarId, MultiPoly>& bindings,
                     const RegistryPtr& target = nullptr);

/// Exact evaluation; every variable of p must be bound.
QuadExt evaluate(const MultiPoly& p, const std::map<VarId, QuadExt>& point);
double evaluate_float(const MultiPoly& p, const std::map<VarId, double>& point);

/// Coefficients c_0..c_deg (free of v) with p = sum c_i v^i; [0] for the zero polynomial.
std::vector<MultiPoly> as_univariate(const MultiPoly& p, VarId v);
MultiPoly from_univariate(std::span<const MultiPoly> coefficients, const RegistryPtr& registry,
                          VarId v);

/// Exact quotient f/g when g divides f in the polynomial ring, else nullopt.
std::optional<MultiPoly> trial_divide(const MultiPoly& f, const MultiPoly& g);

/// p scaled so that its leading graded-lex coefficient is 1 (zero stays zero).
MultiPoly make_monic(const MultiPoly& p);

/// Nested-Horner evaluator in doubles over a fixed variable order.
class HornerPoly {
 public:
  HornerPoly() = default;
  /// Throws if p has a variable not in `order`.
  HornerPoly(const MultiPoly& p, std::vector<VarId> order);

  double operator()(std::span<const double> values) const;
  const std::vector<VarId>& order() const { return order_; }

 private:
  struct Node {
    double constant = 0.0;
    std::size_t level = 0;
    std::vector<Node> coefficients;  // empty => constant leaf
  };
  static Node build(const MultiPoly& p, const std::vector<VarId>& order, std::size_t level);
  static double eval(const Node& node, std::span<const double> values);

  std::vector<VarId> order_;
  Node root_;
};

}  // namespace dw
