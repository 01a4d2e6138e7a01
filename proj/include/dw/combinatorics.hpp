#pragma once

#include "dw/rational.hpp"

namespace dw {

/// Rising factorial x^[m] = x (x+1) ... (x+m-1); equals 1 for m = 0.
Rat pochhammer(const Rat& x, unsigned m);

/// Gamma(x+m)/Gamma(x), always through the rising factorial; Gamma itself is never evaluated.
inline Rat gamma_ratio(const Rat& x, unsigned m) { return pochhammer(x, m); }

/// Binomial coefficient C(n, k); zero for k > n.
mpz_class binomial(unsigned n, unsigned k);

}  // namespace dw
