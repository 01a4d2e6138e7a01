#pragma once

#include "dw/linalg.hpp"
#include "dw/poly.hpp"

namespace dw {

/// Sylvester matrix of p (degree m in v) and q (degree n in v): n shifted rows
/// of p's coefficients followed by m shifted rows of q's, leading coefficient first.
Matrix<MultiPoly> sylvester_matrix(const MultiPoly& p, const MultiPoly& q, VarId v);

/// Determinant of the Sylvester matrix, computed fraction-free. Result is free of v.
/// Throws DomainError if p or q has degree zero in v.
MultiPoly sylvester_resultant(const MultiPoly& p, const MultiPoly& q, VarId v);

}  // namespace dw
