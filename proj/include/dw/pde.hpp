#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dw/poly.hpp"

namespace dw {

/// d^{i+j} u / dx^i dt^j; (0, 0) is u itself.
struct DerivSymbol {
  unsigned x_order = 0;
  unsigned t_order = 0;

  unsigned order() const { return x_order + t_order; }
  /// "u", "u_x", "u_xxt", ... (x letters first).
  std::string name() const;
  /// Accepts "u" or "u_" followed by x/t letters in any order.
  static std::optional<DerivSymbol> parse(std::string_view text);

  friend auto operator<=>(const DerivSymbol&, const DerivSymbol&) = default;
};

using ParamBinding = std::map<std::string, QuadExt>;

/// Polynomial PDE E(u, u_x, u_t, ..., params) = 0.
struct PDESpec {
  RegistryPtr registry;
  MultiPoly E;
  std::map<VarId, DerivSymbol> derivatives;  // every derivative variable in the registry
  std::vector<std::string> parameters;       // declared names, sorted
  ParamBinding bound;                        // values applied by bind_params
  unsigned order = 0;

  /// Parameters that still occur in E.
  std::vector<std::string> free_parameters() const;
  /// "<E> = 0" in canonical polynomial text.
  std::string to_string() const;
};

/// Names that cannot be PDE parameters because the reduction uses them.
bool is_reserved_name(std::string_view name);

/// Parses "lhs = rhs" or a bare expression (meaning "= 0"). Identifiers are
/// derivative symbols of u or parameters; the registry lists u and its
/// derivatives by (order, t-order) followed by parameters alphabetically.
PDESpec parse_pde(std::string_view text);

/// Substitutes bound parameters by exact constants; throws DomainError for
/// names that are not declared parameters.
PDESpec bind_params(const PDESpec& spec, const ParamBinding& binding);

}  // namespace dw
