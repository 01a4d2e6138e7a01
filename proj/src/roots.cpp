#include "dw/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

#include "dw/error.hpp"

namespace dw {

namespace {

using Coeffs = std::vector<QuadExt>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

QuadExt horner(const Coeffs& c, const QuadExt& x) {
  QuadExt acc;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// Divides by (x - r); assumes r is a root.
Coeffs deflate(const Coeffs& c, const QuadExt& r) {
  const std::size_t n = c.size() - 1;
  Coeffs q(n);
  QuadExt carry;
  for (std::size_t i = n; i-- > 0;) {
    carry = c[i + 1] + carry * r;
    q[i] = carry;
  }
  return q;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, unsigned>> primes;
  for (mpz_class p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) primes.emplace_back(p, e);
  }
  if (n > 1) primes.emplace_back(n, 1);
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : primes) {
    const std::size_t size = out.size();
    mpz_class power = 1;
    for (unsigned k = 1; k <= e; ++k) {
      power *= p;
      for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * power);
    }
  }
  return out;
}

bool all_rational(const Coeffs& c) {
  return std::all_of(c.begin(), c.end(), [](const QuadExt& x) { return x.is_rational(); });
}

void add_exact(std::vector<RealRoot>& roots, const QuadExt& r) {
  for (auto& root : roots) {
    if (root.exact && root.exact_value == r) {
      ++root.multiplicity;
      return;
    }
  }
  RealRoot root;
  root.exact = true;
  root.exact_value = r;
  root.value = r.to_double();
  roots.push_back(root);
}

void rational_roots(Coeffs& c, std::vector<RealRoot>& roots) {
  if (c.size() < 2 || !all_rational(c)) return;
  mpz_class scale = 1;
  for (const auto& x : c) scale = lcm(scale, x.rational_part().den());
  const mpz_class lead = abs(mpz_class(c.back().rational_part().value() * scale));
  const mpz_class tail = abs(mpz_class(c.front().rational_part().value() * scale));
  const mpz_class limit = mpz_class("1000000000000");
  if (lead > limit || tail > limit || tail == 0) return;
  const auto ps = divisors(tail);
  const auto qs = divisors(lead);
  std::vector<Rat> candidates;
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      candidates.emplace_back(p, q);
      candidates.emplace_back(-p, q);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const Rat& r : candidates) {
    while (c.size() >= 2 && horner(c, QuadExt(r)).is_zero()) {
      add_exact(roots, QuadExt(r));
      c = deflate(c, QuadExt(r));
    }
  }
}

void quadratic_roots(Coeffs& c, Radicand d, std::vector<RealRoot>& roots) {
  if (c.size() == 2) {
    const QuadExt r = -c[0] / c[1];
    add_exact(roots, r);
    c = Coeffs{c[1]};
    return;
  }
  if (c.size() != 3) return;
  const QuadExt disc = c[1] * c[1] - QuadExt(4) * c[2] * c[0];
  if (!disc.is_rational()) return;
  if (disc.sign() < 0) {
    c.clear();  // no real roots remain
    return;
  }
  const Radicand field = disc.radicand() == 1 ? d : disc.radicand();
  auto s = try_sqrt(disc.rational_part(), field);
  if (!s) return;
  const QuadExt two_a = QuadExt(2) * c[2];
  const QuadExt r1 = (-c[1] - *s) / two_a;
  const QuadExt r2 = (-c[1] + *s) / two_a;
  add_exact(roots, r1);
  add_exact(roots, r2);
  c = Coeffs{c[2]};
}

std::vector<std::complex<double>> companion_roots(const std::vector<double>& c) {
  const std::size_t n = c.size() - 1;
  if (n == 0) return {};
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 1; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / c[n];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

double eval_double(const std::vector<double>& c, double x, double* derivative) {
  double p = 0.0, dp = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * x + p;
    p = p * x + c[i];
  }
  if (derivative) *derivative = dp;
  return p;
}

}  // namespace

std::vector<RealRoot> real_roots(Coeffs c, Radicand d) {
  trim(c);
  if (c.empty()) throw DomainError("zero polynomial has a continuum of roots");
  std::vector<RealRoot> roots;

  std::size_t zero_multiplicity = 0;
  while (c.size() > 1 && c.front().is_zero()) {
    c.erase(c.begin());
    ++zero_multiplicity;
  }
  if (zero_multiplicity) {
    RealRoot root;
    root.exact = true;
    root.multiplicity = static_cast<unsigned>(zero_multiplicity);
    roots.push_back(root);
  }

  rational_roots(c, roots);
  quadratic_roots(c, d, roots);

  if (c.size() > 1) {
    std::vector<double> dc;
    for (const auto& x : c) dc.push_back(x.to_double());
    for (const auto& z : companion_roots(dc)) {
      if (std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z.real()))) continue;
      double x = z.real();
      for (int it = 0; it < 50; ++it) {
        double dp = 0.0;
        const double p = eval_double(dc, x, &dp);
        if (dp == 0.0) break;
        const double step = p / dp;
        x -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
      }
      const bool duplicate = std::any_of(roots.begin(), roots.end(), [&](const RealRoot& r) {
        return std::abs(r.value - x) < 1e-9;
      });
      if (duplicate) {
        for (auto& r : roots) {
          if (!r.exact && std::abs(r.value - x) < 1e-9) ++r.multiplicity;
        }
        continue;
      }
      RealRoot root;
      root.value = x;
      root.residual = std::abs(eval_double(dc, x, nullptr));
      roots.push_back(root);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  return roots;
}

}  // namespace dw
