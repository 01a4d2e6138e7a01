#pragma once

#include <vector>

#include "dw/quad_ext.hpp"

namespace dw {

struct RealRoot {
  double value = 0.0;
  bool exact = false;
  QuadExt exact_value;  // meaningful only when exact
  unsigned multiplicity = 1;
  double residual = 0.0;  // |p(value)| in doubles for numeric roots
};

/// Real roots of c_0 + c_1 x + ... + c_n x^n, sorted by value.
///
/// Rational roots come from the rational-root theorem (skipped when the
/// integer-scaled end coefficients exceed 1e12), a remaining quadratic factor
/// is solved exactly when its discriminant has a square root in Q(sqrt(d)),
/// and whatever is left is solved numerically from the companion matrix with
/// Newton polishing. Numeric roots within 1e-9 of an exact root are dropped.
/// Throws DomainError for the zero polynomial.
std::vector<RealRoot> real_roots(std::vector<QuadExt> coefficients, Radicand d = 1);

}  // namespace dw
