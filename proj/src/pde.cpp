#include "dw/pde.hpp"

#include <algorithm>
#include <set>

#include "dw/error.hpp"
#include "dw/poly_parse.hpp"

namespace dw {

std::string DerivSymbol::name() const {
  if (order() == 0) return "u";
  return "u_" + std::string(x_order, 'x') + std::string(t_order, 't');
}

std::optional<DerivSymbol> DerivSymbol::parse(std::string_view text) {
  if (text == "u") return DerivSymbol{};
  if (text.size() < 3 || text.substr(0, 2) != "u_") return std::nullopt;
  DerivSymbol s;
  for (char ch : text.substr(2)) {
    if (ch == 'x') {
      ++s.x_order;
    } else if (ch == 't') {
      ++s.t_order;
    } else {
      return std::nullopt;
    }
  }
  return s;
}

bool is_reserved_name(std::string_view name) {
  if (name == "c" || name == "sqrt") return true;
  if (name.size() >= 2 && name[0] == 'y' &&
      std::all_of(name.begin() + 1, name.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    return true;
  }
  return false;
}

namespace {

bool looks_like_derivative(std::string_view name) { return name == "u" || name.substr(0, 2) == "u_"; }

}  // namespace

PDESpec parse_pde(std::string_view text) {
  // First pass collects identifiers so the registry order is canonical.
  std::set<DerivSymbol> derivs;
  std::set<std::string> params;
  auto scratch = VarRegistry::create();
  IdentifierHandler collect = [&](const std::string& name, std::size_t line, std::size_t column) {
    if (looks_like_derivative(name)) {
      auto s = DerivSymbol::parse(name);
      if (!s) throw ParseError("invalid derivative symbol '" + name + "' (use u_ followed by x/t)", line, column);
      derivs.insert(*s);
    } else {
      if (is_reserved_name(name)) throw ParseError("reserved name '" + name + "' cannot be a parameter", line, column);
      params.insert(name);
    }
    return MultiPoly::variable(scratch, name);
  };
  parse_equation(text, collect);

  PDESpec spec;
  spec.registry = VarRegistry::create();
  std::vector<DerivSymbol> ordered(derivs.begin(), derivs.end());
  std::sort(ordered.begin(), ordered.end(), [](const DerivSymbol& a, const DerivSymbol& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.t_order < b.t_order;
  });
  for (const auto& s : ordered) spec.derivatives[spec.registry->intern(s.name())] = s;
  for (const auto& p : params) spec.registry->intern(p);
  spec.parameters.assign(params.begin(), params.end());

  IdentifierHandler resolve = [&](const std::string& name, std::size_t, std::size_t) {
    if (looks_like_derivative(name)) return MultiPoly::variable(spec.registry, DerivSymbol::parse(name)->name());
    return MultiPoly::variable(spec.registry, name);
  };
  const ParsedEquation eq = parse_equation(text, resolve);
  spec.E = (eq.lhs - eq.rhs).with_registry(spec.registry);
  if (spec.E.is_zero()) throw DomainError("equation is identically zero");

  bool has_u = false;
  for (const auto& [id, s] : spec.derivatives) {
    if (spec.E.depends_on(id)) {
      has_u = true;
      spec.order = std::max(spec.order, s.order());
    }
  }
  if (!has_u) throw DomainError("equation does not involve u");
  return spec;
}

std::vector<std::string> PDESpec::free_parameters() const {
  std::vector<std::string> out;
  for (const auto& p : parameters) {
    auto id = registry->find(p);
    if (id && E.depends_on(*id)) out.push_back(p);
  }
  return out;
}

std::string PDESpec::to_string() const { return E.to_string() + " = 0"; }

PDESpec bind_params(const PDESpec& spec, const ParamBinding& binding) {
  PDESpec out = spec;
  std::map<VarId, MultiPoly> subs;
  for (const auto& [name, value] : binding) {
    if (!std::binary_search(spec.parameters.begin(), spec.parameters.end(), name)) {
      throw DomainError("unknown parameter '" + name + "'");
    }
    subs[*spec.registry->find(name)] = MultiPoly(value);
    out.bound[name] = value;
  }
  if (subs.empty()) return out;
  out.E = substitute(spec.E, subs, spec.registry);
  if (out.E.is_zero()) throw DomainError("equation vanishes identically after binding parameters");
  out.order = 0;
  for (const auto& [id, s] : out.derivatives) {
    if (out.E.depends_on(id)) out.order = std::max(out.order, s.order());
  }
  return out;
}

}  // namespace dw
