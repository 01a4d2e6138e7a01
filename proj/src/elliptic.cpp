#include "dw/elliptic.hpp"

#include <array>
#include <cmath>

#include "dw/error.hpp"

namespace dw {

JacobiValues jacobi_elliptic(double u, double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw DomainError("Jacobi parameter m must lie in [0, 1]");
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  constexpr int kMaxSteps = 32;
  std::array<double, kMaxSteps + 1> a{}, c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int n = 0;
  while (std::abs(c[n]) > 1e-16 && n < kMaxSteps) {
    const double an = a[n];
    a[n + 1] = 0.5 * (an + b);
    c[n + 1] = 0.5 * (an - b);
    b = std::sqrt(an * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  const double sn = std::sin(phi);
  return {sn, std::cos(phi), std::sqrt(1.0 - m * sn * sn)};
}

}  // namespace dw
