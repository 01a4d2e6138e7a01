#include "dw/combinatorics.hpp"

namespace dw {

Rat pochhammer(const Rat& x, unsigned m) {
  Rat product(1);
  for (unsigned i = 0; i < m; ++i) product *= x + Rat(static_cast<long>(i));
  return product;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class result;
  if (k > n) return 0;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

}  // namespace dw
