#include "dw/poly.hpp"

#include <algorithm>
#include <mutex>

#include "dw/error.hpp"

namespace dw {

// ---------------------------------------------------------------- registry

VarId VarRegistry::intern(std::string_view name) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = index_.find(name); it != index_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  const auto id = static_cast<VarId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(std::string(name), id);
  return id;
}

std::optional<VarId> VarRegistry::find(std::string_view name) const {
  std::shared_lock lock(mutex_);
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

std::string VarRegistry::name(VarId id) const {
  std::shared_lock lock(mutex_);
  if (id >= names_.size()) throw Error("unknown variable id " + std::to_string(id));
  return names_[id];
}

std::size_t VarRegistry::size() const {
  std::shared_lock lock(mutex_);
  return names_.size();
}

RegistryPtr merge_registries(const RegistryPtr& a, const RegistryPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  throw RegistryMismatch();
}

// ---------------------------------------------------------------- monomial

Monomial Monomial::var(VarId v, unsigned exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.emplace_back(v, exponent);
    m.degree_ = exponent;
  }
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(v, e);
    }
    m.degree_ += e;
  }
  return m;
}

unsigned Monomial::exponent(VarId v) const {
  for (const auto& [var, e] : factors_) {
    if (var == v) return e;
    if (var > v) break;
  }
  return 0;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [v, e] : factors_) {
    if (other.exponent(v) < e) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& other) const {
  Monomial m;
  for (const auto& [v, e] : factors_) {
    const unsigned o = other.exponent(v);
    if (o > e) throw Error("monomial quotient is not a monomial");
    if (e > o) {
      m.factors_.emplace_back(v, e - o);
      m.degree_ += e - o;
    }
  }
  if (m.degree_ + other.degree_ != degree_) throw Error("monomial quotient is not a monomial");
  return m;
}

Monomial Monomial::without(VarId v) const {
  Monomial m;
  for (const auto& f : factors_) {
    if (f.first == v) continue;
    m.factors_.push_back(f);
    m.degree_ += f.second;
  }
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.factors_.reserve(a.factors_.size() + b.factors_.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors_.size() || j < b.factors_.size()) {
    if (j == b.factors_.size() || (i < a.factors_.size() && a.factors_[i].first < b.factors_[j].first)) {
      m.factors_.push_back(a.factors_[i++]);
    } else if (i == a.factors_.size() || b.factors_[j].first < a.factors_[i].first) {
      m.factors_.push_back(b.factors_[j++]);
    } else {
      m.factors_.emplace_back(a.factors_[i].first, a.factors_[i].second + b.factors_[j].second);
      ++i;
      ++j;
    }
  }
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() > b.total_degree() ? 1 : -1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first ? 1 : -1;
    if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second ? 1 : -1;
  }
  if (i < fa.size()) return 1;
  if (i < fb.size()) return -1;
  return 0;
}

// ---------------------------------------------------------------- polynomial

MultiPoly::MultiPoly(const QuadExt& constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial{}, constant);
}

MultiPoly MultiPoly::variable(const RegistryPtr& registry, VarId v) {
  if (!registry) throw Error("variable requires a registry");
  return term(registry, Monomial::var(v), QuadExt(1));
}

MultiPoly MultiPoly::variable(const RegistryPtr& registry, std::string_view name) {
  if (!registry) throw Error("variable requires a registry");
  return variable(registry, registry->intern(name));
}

MultiPoly MultiPoly::term(const RegistryPtr& registry, const Monomial& m, const QuadExt& c) {
  MultiPoly p;
  p.registry_ = registry;
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

MultiPoly MultiPoly::with_registry(const RegistryPtr& registry) const {
  MultiPoly p = *this;
  p.registry_ = merge_registries(registry_, registry);
  return p;
}

void MultiPoly::adopt_registry(const RegistryPtr& other) {
  registry_ = merge_registries(registry_, other);
}

void MultiPoly::add_term(const Monomial& m, const QuadExt& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

QuadExt MultiPoly::constant_term() const { return coefficient(Monomial{}); }

QuadExt MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? QuadExt(0) : it->second;
}

unsigned MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.total_degree();
}

unsigned MultiPoly::degree(VarId v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

std::vector<VarId> MultiPoly::variables() const {
  std::vector<VarId> vars;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) vars.push_back(f.first);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

const Monomial& MultiPoly::leading_monomial() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return terms_.begin()->first;
}

const QuadExt& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return terms_.begin()->second;
}

Radicand MultiPoly::radicand() const {
  Radicand d = 1;
  for (const auto& [m, c] : terms_) d = join_radicand(d, c.radicand());
  return d;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
  MultiPoly result(QuadExt(1));
  result.registry_ = registry_;
  MultiPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::scaled(const QuadExt& factor) const {
  MultiPoly p;
  p.registry_ = registry_;
  if (factor.is_zero()) return p;
  for (const auto& [m, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), m, c * factor);
  return p;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  adopt_registry(other.registry_);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  adopt_registry(other.registry_);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly p;
  p.registry_ = merge_registries(a.registry_, b.registry_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
  }
  return p;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) { return *this = *this * other; }

MultiPoly operator-(const MultiPoly& a) { return a.scaled(QuadExt(-1)); }

namespace {

struct CoefficientText {
  bool negative = false;
  std::string magnitude;  // empty when the magnitude is exactly 1
};

CoefficientText render_coefficient(const QuadExt& c) {
  CoefficientText t;
  if (!c.rational_part().is_zero() && !c.radical_part().is_zero()) {
    t.magnitude = "(" + c.to_string() + ")";
    return t;
  }
  t.negative = c.sign() < 0;
  const QuadExt mag = c.abs();
  if (!mag.is_one()) t.magnitude = mag.to_string();
  return t;
}

std::string render_monomial(const Monomial& m, const VarRegistry* registry) {
  std::string out;
  for (const auto& [v, e] : m.factors()) {
    if (!out.empty()) out += "*";
    out += registry ? registry->name(v) : ("v" + std::to_string(v));
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const CoefficientText ct = render_coefficient(c);
    std::string body;
    if (m.is_one()) {
      body = ct.magnitude.empty() ? "1" : ct.magnitude;
    } else if (ct.magnitude.empty()) {
      body = render_monomial(m, registry_.get());
    } else {
      body = ct.magnitude + "*" + render_monomial(m, registry_.get());
    }
    if (first) {
      out += (ct.negative ? "-" : "") + body;
    } else {
      out += (ct.negative ? " - " : " + ") + body;
    }
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------- operations

MultiPoly partial_derivative(const MultiPoly& p, VarId v) {
  MultiPoly result = MultiPoly(0).with_registry(p.registry());
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m.exponent(v);
    if (e == 0) continue;
    std::vector<Monomial::Factor> factors = m.factors();
    for (auto& f : factors) {
      if (f.first == v) f.second -= 1;
    }
    result += MultiPoly::term(p.registry(), Monomial::from_factors(std::move(factors)),
                              c * QuadExt(static_cast<long>(e)));
  }
  return result;
}

MultiPoly substitute(const MultiPoly& p, const std::map<VarId, MultiPoly>& bindings,
                     const RegistryPtr& target) {
  const RegistryPtr out_registry = target ? target : p.registry();
  MultiPoly result = MultiPoly(0).with_registry(out_registry);
  std::map<std::pair<VarId, unsigned>, MultiPoly> power_cache;
  auto image = [&](VarId v, unsigned e) -> const MultiPoly& {
    auto key = std::make_pair(v, e);
    if (auto it = power_cache.find(key); it != power_cache.end()) return it->second;
    MultiPoly base;
    if (auto b = bindings.find(v); b != bindings.end()) {
      base = b->second;
    } else {
      if (!p.registry()) throw Error("polynomial has variables but no registry");
      base = MultiPoly::variable(out_registry, out_registry == p.registry()
                                                   ? v
                                                   : out_registry->intern(p.registry()->name(v)));
    }
    return power_cache.emplace(key, base.pow(e)).first->second;
  };
  for (const auto& [m, c] : p.terms()) {
    MultiPoly t(c);
    for (const auto& [v, e] : m.factors()) t *= image(v, e);
    result += t;
  }
  return result;
}

QuadExt evaluate(const MultiPoly& p, const std::map<VarId, QuadExt>& point) {
  QuadExt total(0);
  std::map<std::pair<VarId, unsigned>, QuadExt> power_cache;
  for (const auto& [m, c] : p.terms()) {
    QuadExt t = c;
    for (const auto& [v, e] : m.factors()) {
      auto key = std::make_pair(v, e);
      auto it = power_cache.find(key);
      if (it == power_cache.end()) {
        auto b = point.find(v);
        if (b == point.end()) {
          throw DomainError("unbound variable '" +
                            (p.registry() ? p.registry()->name(v) : std::to_string(v)) + "'");
        }
        it = power_cache.emplace(key, b->second.pow(e)).first;
      }
      t *= it->second;
    }
    total += t;
  }
  return total;
}

double evaluate_float(const MultiPoly& p, const std::map<VarId, double>& point) {
  std::vector<VarId> order;
  std::vector<double> values;
  for (VarId v : p.variables()) {
    auto it = point.find(v);
    if (it == point.end()) {
      throw DomainError("unbound variable '" +
                        (p.registry() ? p.registry()->name(v) : std::to_string(v)) + "'");
    }
    order.push_back(v);
    values.push_back(it->second);
  }
  return HornerPoly(p, order)(values);
}

std::vector<MultiPoly> as_univariate(const MultiPoly& p, VarId v) {
  std::vector<MultiPoly> coeffs(p.degree(v) + 1, MultiPoly(0).with_registry(p.registry()));
  for (const auto& [m, c] : p.terms()) {
    coeffs[m.exponent(v)] += MultiPoly::term(p.registry(), m.without(v), c);
  }
  return coeffs;
}

MultiPoly from_univariate(std::span<const MultiPoly> coefficients, const RegistryPtr& registry,
                          VarId v) {
  MultiPoly result = MultiPoly(0).with_registry(registry);
  const MultiPoly var = MultiPoly::variable(registry, v);
  MultiPoly power = MultiPoly(1).with_registry(registry);
  for (const auto& c : coefficients) {
    result += c * power;
    power *= var;
  }
  return result;
}

std::optional<MultiPoly> trial_divide(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw DivisionByZero();
  const RegistryPtr registry = merge_registries(f.registry(), g.registry());
  MultiPoly remainder = f.with_registry(registry);
  MultiPoly quotient = MultiPoly(0).with_registry(registry);
  const Monomial& lead_m = g.leading_monomial();
  const QuadExt& lead_c = g.leading_coefficient();
  // With a single divisor the leading term of every multiple of g is
  // divisible by LT(g), so the first failure proves non-divisibility.
  while (!remainder.is_zero()) {
    const Monomial& rm = remainder.leading_monomial();
    if (!lead_m.divides(rm)) return std::nullopt;
    MultiPoly t = MultiPoly::term(registry, rm.quotient(lead_m), remainder.leading_coefficient() / lead_c);
    remainder -= t * g;
    quotient += t;
  }
  if (!(quotient * g == f)) return std::nullopt;
  return quotient;
}

MultiPoly make_monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.leading_coefficient().inverse());
}

// ---------------------------------------------------------------- Horner

HornerPoly::HornerPoly(const MultiPoly& p, std::vector<VarId> order) : order_(std::move(order)) {
  for (VarId v : p.variables()) {
    if (std::find(order_.begin(), order_.end(), v) == order_.end()) {
      throw DomainError("unbound variable '" +
                        (p.registry() ? p.registry()->name(v) : std::to_string(v)) + "'");
    }
  }
  root_ = build(p, order_, 0);
}

HornerPoly::Node HornerPoly::build(const MultiPoly& p, const std::vector<VarId>& order,
                                   std::size_t level) {
  Node node;
  node.level = level;
  if (p.is_constant() || level == order.size()) {
    node.constant = p.constant_term().to_double();
    return node;
  }
  if (!p.depends_on(order[level])) return build(p, order, level + 1);
  for (const auto& c : as_univariate(p, order[level])) {
    node.coefficients.push_back(build(c, order, level + 1));
  }
  return node;
}

double HornerPoly::eval(const Node& node, std::span<const double> values) {
  if (node.coefficients.empty()) return node.constant;
  const double x = values[node.level];
  double acc = 0.0;
  for (auto it = node.coefficients.rbegin(); it != node.coefficients.rend(); ++it) {
    acc = acc * x + eval(*it, values);
  }
  return acc;
}

double HornerPoly::operator()(std::span<const double> values) const {
  if (values.size() < order_.size()) throw DomainError("too few values for Horner evaluation");
  return eval(root_, values);
}

}  // namespace dw
