#include "dw/resultant.hpp"

#include "dw/error.hpp"

namespace dw {

Matrix<MultiPoly> sylvester_matrix(const MultiPoly& p, const MultiPoly& q, VarId v) {
  const RegistryPtr registry = merge_registries(p.registry(), q.registry());
  const auto pc = as_univariate(p, v);
  const auto qc = as_univariate(q, v);
  const std::size_t m = pc.size() - 1;
  const std::size_t n = qc.size() - 1;
  const std::size_t size = m + n;
  const MultiPoly zero = MultiPoly(0).with_registry(registry);
  Matrix<MultiPoly> s(size, std::vector<MultiPoly>(size, zero));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t i = 0; i <= m; ++i) s[row][row + i] = pc[m - i].with_registry(registry);
  }
  for (std::size_t row = 0; row < m; ++row) {
    for (std::size_t i = 0; i <= n; ++i) s[n + row][row + i] = qc[n - i].with_registry(registry);
  }
  return s;
}

MultiPoly sylvester_resultant(const MultiPoly& p, const MultiPoly& q, VarId v) {
  if (p.degree(v) == 0 || q.degree(v) == 0) {
    throw DomainError("resultant needs positive degree in the eliminated variable");
  }
  const RegistryPtr registry = merge_registries(p.registry(), q.registry());
  auto exact = [](const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return a;
    if (b.is_constant()) return a.scaled(b.constant_term().inverse());
    auto quotient = trial_divide(a, b);
    if (!quotient) throw Error("internal: inexact Bareiss division in resultant");
    return *quotient;
  };
  return bareiss_determinant(sylvester_matrix(p, q, v), MultiPoly(1).with_registry(registry), exact)
      .with_registry(registry);
}

}  // namespace dw
