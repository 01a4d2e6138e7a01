#include "dw/closed_form.hpp"

#include <cmath>

#include "dw/elliptic.hpp"
#include "dw/error.hpp"

namespace dw {

struct ClosedForm::Node {
  Op op = Op::Const;
  std::vector<ClosedForm> kids;
  Number c;
  int n = 0;
  Rat p;
  double m = 0.0;
};

Number sqrt_number(const QuadExt& q) {
  if (q.sign() >= 0) {
    if (q.is_zero()) return QuadExt(0);
    if (q.is_rational()) {
      // sqrt(a/b) = sqrt(a b) / b
      const Rat& r = q.rational_part();
      return QuadExt::sqrt_of(r.num() * r.den()) / QuadExt(Rat(r.den()));
    }
    if (auto r = try_sqrt(q)) return *r;
  }
  return std::sqrt(q.to_double());
}

namespace {

Number fold(const Number& a, const Number& b, char op) {
  if (a.exact && b.exact) {
    try {
      switch (op) {
        case '+': return *a.exact + *b.exact;
        case '-': return *a.exact - *b.exact;
        case '*': return *a.exact * *b.exact;
        default: return *a.exact / *b.exact;
      }
    } catch (const RadicandMismatch&) {
      // fall through to floats
    }
  }
  switch (op) {
    case '+': return a.value + b.value;
    case '-': return a.value - b.value;
    case '*': return a.value * b.value;
    default: return a.value / b.value;
  }
}

bool is_const_value(const ClosedForm& f, long v) {
  if (f.op() != ClosedForm::Op::Const) return false;
  const Number& c = f.constant();
  return c.exact ? *c.exact == QuadExt(v) : c.value == static_cast<double>(v);
}

}  // namespace

ClosedForm::ClosedForm() : ClosedForm(Number(0)) {}

ClosedForm::ClosedForm(const Number& c) {
  auto node = std::make_shared<Node>();
  node->op = Op::Const;
  node->c = c;
  node_ = std::move(node);
}

ClosedForm ClosedForm::make(Op op, std::vector<ClosedForm> children) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->kids = std::move(children);
  return ClosedForm(std::shared_ptr<const Node>(std::move(node)));
}

ClosedForm ClosedForm::var() { return make(Op::Var, {}); }
ClosedForm ClosedForm::k() { return make(Op::K, {}); }

ClosedForm ClosedForm::from_poly(const MultiPoly& p, VarId v) {
  const auto coeffs = as_univariate(p, v);
  ClosedForm acc;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (!coeffs[i].is_constant()) throw DomainError("from_poly: polynomial must be univariate");
    acc = acc * var() + ClosedForm(Number(coeffs[i].constant_term()));
  }
  return acc;
}

ClosedForm::Op ClosedForm::op() const { return node_->op; }
const std::vector<ClosedForm>& ClosedForm::children() const { return node_->kids; }
const Number& ClosedForm::constant() const { return node_->c; }
int ClosedForm::int_exponent() const { return node_->n; }
const Rat& ClosedForm::real_exponent() const { return node_->p; }
double ClosedForm::modulus() const { return node_->m; }

bool ClosedForm::is_constant() const { return op() == Op::Const; }
bool ClosedForm::is_zero() const { return is_const_value(*this, 0); }

ClosedForm ClosedForm::pow(int n) const {
  if (n == 0) return ClosedForm(1);
  if (n == 1) return *this;
  if (is_constant() && constant().exact && n > 0) return ClosedForm(Number(constant().exact->pow(n)));
  auto node = std::make_shared<Node>();
  node->op = Op::PowInt;
  node->kids = {*this};
  node->n = n;
  return ClosedForm(std::shared_ptr<const Node>(std::move(node)));
}

ClosedForm ClosedForm::pow(const Rat& p) const {
  if (p.den() == 1 && abs(p.num()) < 1000) return pow(static_cast<int>(p.num().get_si()));
  auto node = std::make_shared<Node>();
  node->op = Op::PowReal;
  node->kids = {*this};
  node->p = p;
  return ClosedForm(std::shared_ptr<const Node>(std::move(node)));
}

ClosedForm operator+(const ClosedForm& a, const ClosedForm& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return ClosedForm(fold(a.constant(), b.constant(), '+'));
  return ClosedForm::make(ClosedForm::Op::Add, {a, b});
}

ClosedForm operator-(const ClosedForm& a, const ClosedForm& b) {
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return ClosedForm(fold(a.constant(), b.constant(), '-'));
  return ClosedForm::make(ClosedForm::Op::Sub, {a, b});
}

ClosedForm operator*(const ClosedForm& a, const ClosedForm& b) {
  if (a.is_zero() || b.is_zero()) return ClosedForm();
  if (is_const_value(a, 1)) return b;
  if (is_const_value(b, 1)) return a;
  if (a.is_constant() && b.is_constant()) return ClosedForm(fold(a.constant(), b.constant(), '*'));
  return ClosedForm::make(ClosedForm::Op::Mul, {a, b});
}

ClosedForm operator/(const ClosedForm& a, const ClosedForm& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return ClosedForm();
  if (is_const_value(b, 1)) return a;
  if (a.is_constant() && b.is_constant()) return ClosedForm(fold(a.constant(), b.constant(), '/'));
  return ClosedForm::make(ClosedForm::Op::Div, {a, b});
}

ClosedForm operator-(const ClosedForm& a) {
  if (a.is_constant()) return ClosedForm(fold(Number(0), a.constant(), '-'));
  return ClosedForm(-1) * a;
}

ClosedForm exp(const ClosedForm& a) { return ClosedForm::make(ClosedForm::Op::Exp, {a}); }
ClosedForm tanh(const ClosedForm& a) { return ClosedForm::make(ClosedForm::Op::Tanh, {a}); }
ClosedForm cosh(const ClosedForm& a) { return ClosedForm::make(ClosedForm::Op::Cosh, {a}); }
ClosedForm sinh(const ClosedForm& a) { return ClosedForm::make(ClosedForm::Op::Sinh, {a}); }
ClosedForm sqrt(const ClosedForm& a) { return ClosedForm::make(ClosedForm::Op::Sqrt, {a}); }

ClosedForm jacobi_cn(const ClosedForm& a, double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw DomainError("Jacobi parameter m must lie in [0, 1]");
  auto node = std::make_shared<ClosedForm::Node>();
  node->op = ClosedForm::Op::Cn;
  node->kids = {a};
  node->m = m;
  return ClosedForm(std::shared_ptr<const ClosedForm::Node>(std::move(node)));
}

bool ClosedForm::has_symbolic_derivative() const {
  if (op() == Op::Cn) return false;
  for (const auto& k : children()) {
    if (!k.has_symbolic_derivative()) return false;
  }
  return true;
}

ClosedForm ClosedForm::derivative() const {
  const auto& kids = children();
  switch (op()) {
    case Op::Var: return ClosedForm(1);
    case Op::K:
    case Op::Const: return ClosedForm();
    case Op::Add: return kids[0].derivative() + kids[1].derivative();
    case Op::Sub: return kids[0].derivative() - kids[1].derivative();
    case Op::Mul: return kids[0].derivative() * kids[1] + kids[0] * kids[1].derivative();
    case Op::Div:
      return (kids[0].derivative() * kids[1] - kids[0] * kids[1].derivative()) / kids[1].pow(2);
    case Op::PowInt: {
      const int n = int_exponent();
      return ClosedForm(n) * kids[0].pow(n - 1) * kids[0].derivative();
    }
    case Op::PowReal: {
      const Rat& p = real_exponent();
      return ClosedForm(Number(QuadExt(p))) * kids[0].pow(p - Rat(1)) * kids[0].derivative();
    }
    case Op::Exp: return *this * kids[0].derivative();
    case Op::Tanh: return (ClosedForm(1) - pow(2)) * kids[0].derivative();
    case Op::Cosh: return sinh(kids[0]) * kids[0].derivative();
    case Op::Sinh: return cosh(kids[0]) * kids[0].derivative();
    case Op::Sqrt: return kids[0].derivative() / (ClosedForm(2) * *this);
    case Op::Cn: break;
  }
  throw DomainError("no symbolic derivative for cn");
}

double ClosedForm::operator()(double s, double k) const {
  const auto& kids = children();
  switch (op()) {
    case Op::Var: return s;
    case Op::K: return k;
    case Op::Const: return constant().value;
    case Op::Add: return kids[0](s, k) + kids[1](s, k);
    case Op::Sub: return kids[0](s, k) - kids[1](s, k);
    case Op::Mul: return kids[0](s, k) * kids[1](s, k);
    case Op::Div: return kids[0](s, k) / kids[1](s, k);
    case Op::PowInt: return std::pow(kids[0](s, k), int_exponent());
    case Op::PowReal: return std::pow(kids[0](s, k), real_exponent().to_double());
    case Op::Exp: return std::exp(kids[0](s, k));
    case Op::Tanh: return std::tanh(kids[0](s, k));
    case Op::Cosh: return std::cosh(kids[0](s, k));
    case Op::Sinh: return std::sinh(kids[0](s, k));
    case Op::Sqrt: return std::sqrt(kids[0](s, k));
    case Op::Cn: return jacobi_elliptic(kids[0](s, k), modulus()).cn;
  }
  return 0.0;
}

namespace {

template <class F>
double richardson(const F& f, double s, double h) {
  const auto central = [&](double step) { return (f(s + step) - f(s - step)) / (2.0 * step); };
  return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

double numeric_derivative(const ClosedForm& f, double s, unsigned order, double k) {
  if (order == 0) return f(s, k);
  // Richardson leaves an O(h^4) truncation error; roundoff dominates below h ~ 1e-3.
  constexpr double h = 1e-3;
  return richardson([&](double t) { return numeric_derivative(f, t, order - 1, k); }, s, h);
}

}  // namespace

double ClosedForm::derivative_at(double s, unsigned order, double k) const {
  if (!has_symbolic_derivative()) return numeric_derivative(*this, s, order, k);
  ClosedForm d = *this;
  for (unsigned i = 0; i < order; ++i) d = d.derivative();
  return d(s, k);
}

std::string ClosedForm::to_string() const {
  const auto& kids = children();
  auto wrap = [](const ClosedForm& f) {
    const Op o = f.op();
    const bool atomic = o == Op::Var || o == Op::K || o == Op::Exp || o == Op::Tanh || o == Op::Cosh ||
                        o == Op::Sinh || o == Op::Sqrt || o == Op::Cn ||
                        (o == Op::Const && f.constant().exact && f.constant().exact->is_rational() &&
                         f.constant().exact->rational_part().den() == 1 && f.constant().exact->sign() >= 0);
    return atomic ? f.to_string() : "(" + f.to_string() + ")";
  };
  switch (op()) {
    case Op::Var: return "s";
    case Op::K: return "k";
    case Op::Const: {
      if (constant().exact) return constant().exact->to_string();
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", constant().value);
      return buf;
    }
    case Op::Add: return kids[0].to_string() + " + " + kids[1].to_string();
    case Op::Sub: return kids[0].to_string() + " - " + wrap(kids[1]);
    case Op::Mul: return wrap(kids[0]) + "*" + wrap(kids[1]);
    case Op::Div: return wrap(kids[0]) + "/" + wrap(kids[1]);
    case Op::PowInt: return wrap(kids[0]) + "^" + (int_exponent() < 0 ? "(" + std::to_string(int_exponent()) + ")"
                                                                      : std::to_string(int_exponent()));
    case Op::PowReal: return wrap(kids[0]) + "^(" + real_exponent().to_string() + ")";
    case Op::Exp: return "exp(" + kids[0].to_string() + ")";
    case Op::Tanh: return "tanh(" + kids[0].to_string() + ")";
    case Op::Cosh: return "cosh(" + kids[0].to_string() + ")";
    case Op::Sinh: return "sinh(" + kids[0].to_string() + ")";
    case Op::Sqrt: return "sqrt(" + kids[0].to_string() + ")";
    case Op::Cn: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", modulus());
      return "cn(" + kids[0].to_string() + ", " + buf + ")";
    }
  }
  return "?";
}

ExpRational ExpRational::derivative() const {
  ExpRational out = *this;
  const MultiPoly Z = MultiPoly::variable(registry, z);
  out.num = (partial_derivative(num, z) * den - num * partial_derivative(den, z)) * Z.scaled(mu);
  out.den = den * den;
  return out;
}

namespace {

struct Fraction {
  MultiPoly num, den;
};

class ExpRationalBuilder {
 public:
  ExpRationalBuilder(const RegistryPtr& reg, VarId z, const QuadExt& mu, const QuadExt& k)
      : reg_(reg), z_(z), mu_(mu), k_(k) {}

  std::optional<Fraction> build(const ClosedForm& f) const {
    using Op = ClosedForm::Op;
    const auto& kids = f.children();
    switch (f.op()) {
      case Op::K: return Fraction{MultiPoly(k_), MultiPoly(1)};
      case Op::Const:
        if (!f.constant().exact) return std::nullopt;
        return Fraction{MultiPoly(*f.constant().exact), MultiPoly(1)};
      case Op::Add:
      case Op::Sub: {
        auto a = build(kids[0]), b = build(kids[1]);
        if (!a || !b) return std::nullopt;
        MultiPoly l = a->num * b->den, r = b->num * a->den;
        return Fraction{f.op() == Op::Add ? l + r : l - r, a->den * b->den};
      }
      case Op::Mul: {
        auto a = build(kids[0]), b = build(kids[1]);
        if (!a || !b) return std::nullopt;
        return Fraction{a->num * b->num, a->den * b->den};
      }
      case Op::Div: {
        auto a = build(kids[0]), b = build(kids[1]);
        if (!a || !b || b->num.is_zero()) return std::nullopt;
        return Fraction{a->num * b->den, a->den * b->num};
      }
      case Op::PowInt: {
        auto a = build(kids[0]);
        if (!a) return std::nullopt;
        const int n = f.int_exponent();
        if (n >= 0) return Fraction{a->num.pow(n), a->den.pow(n)};
        if (a->num.is_zero()) return std::nullopt;
        return Fraction{a->den.pow(-n), a->num.pow(-n)};
      }
      case Op::Exp: {
        auto n = multiple(kids[0]);
        if (!n) return std::nullopt;
        return *n >= 0 ? Fraction{zpow(*n), MultiPoly(1)} : Fraction{MultiPoly(1), zpow(-*n)};
      }
      case Op::Tanh: {
        auto n = multiple(kids[0]);
        if (!n) return std::nullopt;
        const MultiPoly w = zpow(2 * std::abs(*n));
        const MultiPoly num = *n >= 0 ? w - MultiPoly(1) : MultiPoly(1) - w;
        return Fraction{num, w + MultiPoly(1)};
      }
      case Op::Cosh: {
        auto n = multiple(kids[0]);
        if (!n) return std::nullopt;
        const int a = std::abs(*n);
        return Fraction{zpow(2 * a) + MultiPoly(1), zpow(a).scaled(QuadExt(2))};
      }
      case Op::Sinh: {
        auto n = multiple(kids[0]);
        if (!n) return std::nullopt;
        const int a = std::abs(*n);
        const MultiPoly num = zpow(2 * a) - MultiPoly(1);
        return Fraction{*n >= 0 ? num : -num, zpow(a).scaled(QuadExt(2))};
      }
      default: return std::nullopt;
    }
  }

 private:
  MultiPoly zpow(int n) const { return MultiPoly::variable(reg_, z_).pow(static_cast<unsigned>(n)); }

  // a with f = a * var, exact.
  static std::optional<QuadExt> linear(const ClosedForm& f) {
    using Op = ClosedForm::Op;
    const auto& kids = f.children();
    auto exact_const = [](const ClosedForm& g) -> std::optional<QuadExt> {
      if (g.op() == Op::Const && g.constant().exact) return *g.constant().exact;
      return std::nullopt;
    };
    try {
      switch (f.op()) {
        case Op::Var: return QuadExt(1);
        case Op::Mul: {
          if (auto c = exact_const(kids[0])) {
            if (auto l = linear(kids[1])) return *c * *l;
          }
          if (auto c = exact_const(kids[1])) {
            if (auto l = linear(kids[0])) return *c * *l;
          }
          return std::nullopt;
        }
        case Op::Div: {
          auto c = exact_const(kids[1]);
          auto l = linear(kids[0]);
          if (c && l) return *l / *c;
          return std::nullopt;
        }
        case Op::Add:
        case Op::Sub: {
          auto a = linear(kids[0]), b = linear(kids[1]);
          if (a && b) return f.op() == Op::Add ? *a + *b : *a - *b;
          return std::nullopt;
        }
        default: return std::nullopt;
      }
    } catch (const RadicandMismatch&) {
      return std::nullopt;
    }
  }

  // n with f = n * mu * var, n an integer.
  std::optional<int> multiple(const ClosedForm& f) const {
    auto a = linear(f);
    if (!a) return std::nullopt;
    QuadExt ratio;
    try {
      ratio = *a / mu_;
    } catch (const RadicandMismatch&) {
      return std::nullopt;
    }
    if (!ratio.is_rational() || ratio.rational_part().den() != 1) return std::nullopt;
    const mpz_class& n = ratio.rational_part().num();
    if (abs(n) > 64) return std::nullopt;
    return static_cast<int>(n.get_si());
  }

  RegistryPtr reg_;
  VarId z_;
  QuadExt mu_;
  QuadExt k_;
};

}  // namespace

std::optional<ExpRational> to_exp_rational(const ClosedForm& f, const QuadExt& mu, const QuadExt& k) {
  if (mu.is_zero()) throw DomainError("exp-rational rate must be nonzero");
  ExpRational out;
  out.registry = VarRegistry::create();
  out.z = out.registry->intern("z");
  out.mu = mu;
  auto frac = ExpRationalBuilder(out.registry, out.z, mu, k).build(f);
  if (!frac) return std::nullopt;
  out.num = frac->num.with_registry(out.registry);
  out.den = frac->den.with_registry(out.registry);
  return out;
}

bool vanishes_identically(const MultiPoly& p, VarId u, VarId v, const ExpRational& U) {
  for (VarId w : p.variables()) {
    if (w != u && w != v) throw DomainError("vanishes_identically: p has variables besides U and U'");
  }
  const ExpRational V = U.derivative();
  const unsigned a = p.degree(u), b = p.degree(v);
  MultiPoly total = MultiPoly(0).with_registry(U.registry);
  for (const auto& [mono, coeff] : p.terms()) {
    const unsigned i = mono.exponent(u), j = mono.exponent(v);
    total += (U.num.pow(i) * U.den.pow(a - i) * V.num.pow(j) * V.den.pow(b - j)).scaled(coeff);
  }
  return total.is_zero();
}

}  // namespace dw
