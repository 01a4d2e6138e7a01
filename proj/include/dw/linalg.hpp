#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dw/quad_ext.hpp"

namespace dw {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Determinant by fraction-free Bareiss elimination.
///
/// T needs ring operations and is_zero(); `exact_div(a, b)` must return a/b
/// when b divides a exactly (guaranteed by the Bareiss identity).
template <class T, class ExactDiv>
T bareiss_determinant(Matrix<T> m, const T& one, ExactDiv exact_div) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  bool negate = false;
  T previous = one;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot][k].is_zero()) ++pivot;
      if (pivot == n) return one - one;
      std::swap(m[k], m[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], previous);
      }
      m[i][k] = one - one;
    }
    previous = m[k][k];
  }
  T det = m[n - 1][n - 1];
  return negate ? (one - one) - det : det;
}

/// Basis of the right nullspace {v : A v = 0} over Q(sqrt(d)).
///
/// Forward elimination is fraction-free (Bareiss); the basis is read off the
/// reduced echelon form, one vector per free column j, with v[j] = 1, zero at
/// the other free columns and support on columns <= j. Vectors are returned in
/// increasing order of their free column.
std::vector<std::vector<QuadExt>> nullspace(Matrix<QuadExt> a, std::size_t columns);

/// Rank of A.
std::size_t rank(Matrix<QuadExt> a, std::size_t columns);

}  // namespace dw
