#include "dw/linalg.hpp"

namespace dw {

namespace {

struct Echelon {
  Matrix<QuadExt> rows;
  std::vector<std::size_t> pivot_columns;
};

// Fraction-free row echelon form; each step divides by the previous pivot.
Echelon echelon(Matrix<QuadExt> a, std::size_t columns) {
  Echelon e;
  QuadExt previous(1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < columns && r < a.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < a.size() && a[pivot][col].is_zero()) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[r], a[pivot]);
    const QuadExt p = a[r][col];
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      const QuadExt factor = a[i][col];
      for (std::size_t j = col; j < columns; ++j) {
        QuadExt v = p * a[i][j];
        if (!factor.is_zero() && !a[r][j].is_zero()) v -= factor * a[r][j];
        if (!v.is_zero() && !previous.is_one()) v /= previous;
        a[i][j] = v;
      }
    }
    previous = p;
    e.pivot_columns.push_back(col);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

}  // namespace

std::vector<std::vector<QuadExt>> nullspace(Matrix<QuadExt> a, std::size_t columns) {
  for (auto& row : a) row.resize(columns);
  const Echelon e = echelon(std::move(a), columns);
  std::vector<bool> is_pivot(columns, false);
  for (std::size_t c : e.pivot_columns) is_pivot[c] = true;

  std::vector<std::vector<QuadExt>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<QuadExt> v(columns);
    v[free] = QuadExt(1);
    for (std::size_t k = e.rows.size(); k-- > 0;) {
      const std::size_t pc = e.pivot_columns[k];
      if (pc > free) continue;
      QuadExt sum;
      for (std::size_t j = pc + 1; j <= free; ++j) {
        if (!v[j].is_zero() && !e.rows[k][j].is_zero()) sum += e.rows[k][j] * v[j];
      }
      v[pc] = sum.is_zero() ? QuadExt() : -sum / e.rows[k][pc];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(Matrix<QuadExt> a, std::size_t columns) {
  for (auto& row : a) row.resize(columns);
  return echelon(std::move(a), columns).pivot_columns.size();
}

}  // namespace dw
