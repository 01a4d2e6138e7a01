#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "dw/poly.hpp"

namespace dw {

/// Resolves an identifier to a polynomial; may throw ParseError.
using IdentifierHandler =
    std::function<MultiPoly(const std::string& name, std::size_t line, std::size_t column)>;

struct ParsedEquation {
  MultiPoly lhs;
  MultiPoly rhs;  // zero when the text has no '='
  bool has_rhs = false;
};

/// Expression grammar shared by polynomial text, field literals and PDEs:
///
///   equation := expr ("=" expr)?
///   expr     := term (("+"|"-") term)*
///   term     := factor (("*"|"/") factor)*      division only by nonzero constants
///   factor   := atom ("^" uint)?
///   atom     := ident | int ("/" uint)? | "sqrt" "(" uint ")" | "(" expr ")" | "-" factor
///
/// Input must be ASCII. Errors are ParseError with 1-based line/column.
ParsedEquation parse_equation(std::string_view text, const IdentifierHandler& identifiers);
MultiPoly parse_expression(std::string_view text, const IdentifierHandler& identifiers);

/// Polynomial text; identifiers are interned into `registry`.
MultiPoly parse_poly(std::string_view text, const RegistryPtr& registry);

/// Constant expression such as "5/6*sqrt(6)"; identifiers are rejected.
QuadExt parse_constant(std::string_view text);

}  // namespace dw
