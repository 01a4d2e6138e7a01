#pragma once

#include <random>

#include "dw/darboux.hpp"
#include "dw/linalg.hpp"
#include "test_support.hpp"

namespace dwtest {

/// System with a known invariant curve f: P = -H f_y + alpha f, Q = H f_x + beta f,
/// which gives P f_x + Q f_y = (alpha f_x + beta f_y) f.
struct Planted {
  dw::PlanarSystem sys;
  dw::MultiPoly f;
  dw::MultiPoly k;
};

inline Planted make_planted(std::mt19937& rng, dw::Radicand d = 1) {
  for (;;) {
    Planted out;
    out.sys.registry = dw::VarRegistry::create();
    out.sys.x = out.sys.registry->intern("x");
    out.sys.y = out.sys.registry->intern("y");
    const std::vector<dw::VarId> xy{out.sys.x, out.sys.y};
    std::uniform_int_distribution<unsigned> fdeg(1, 3);
    out.f = random_poly(rng, out.sys.registry, xy, fdeg(rng), 4, d);
    const dw::MultiPoly H = random_poly(rng, out.sys.registry, xy, 1, 2, d);
    const dw::MultiPoly alpha = random_poly(rng, out.sys.registry, xy, 1, 2, d);
    const dw::MultiPoly beta = random_poly(rng, out.sys.registry, xy, 1, 2, d);
    if (out.f.total_degree() == 0) continue;
    const dw::MultiPoly fx = dw::partial_derivative(out.f, out.sys.x);
    const dw::MultiPoly fy = dw::partial_derivative(out.f, out.sys.y);
    out.sys.P = -H * fy + alpha * out.f;
    out.sys.Q = H * fx + beta * out.f;
    out.k = alpha * fx + beta * fy;
    if (out.sys.P.is_zero() && out.sys.Q.is_zero()) continue;
    return out;
  }
}

/// Coefficient vector of f over the monomials of degree <= n.
inline std::vector<dw::QuadExt> coefficients(const dw::MultiPoly& f, const std::vector<dw::Monomial>& basis) {
  std::vector<dw::QuadExt> out;
  for (const auto& m : basis) out.push_back(f.coefficient(m));
  return out;
}

/// True when target lies in the span of the given polynomials.
inline bool in_span(const dw::MultiPoly& target, const std::vector<dw::MultiPoly>& span, const dw::PlanarSystem& sys,
                    unsigned n) {
  const auto basis = dw::monomials_up_to(sys.x, sys.y, n);
  dw::Matrix<dw::QuadExt> rows;
  for (const auto& p : span) rows.push_back(coefficients(p, basis));
  const std::size_t r = dw::rank(rows, basis.size());
  rows.push_back(coefficients(target, basis));
  return dw::rank(rows, basis.size()) == r;
}

/// Exact check of the cofactor identity at random rational points, by point
/// evaluation only (no polynomial expansion of the residual).
inline bool pointwise_invariant(const dw::PlanarSystem& sys, const dw::MultiPoly& f, const dw::MultiPoly& k,
                                std::mt19937& rng, int points = 6) {
  std::uniform_int_distribution<long> v(-9, 9);
  std::uniform_int_distribution<long> w(1, 5);
  const dw::MultiPoly fx = dw::partial_derivative(f, sys.x);
  const dw::MultiPoly fy = dw::partial_derivative(f, sys.y);
  for (int i = 0; i < points; ++i) {
    const std::map<dw::VarId, dw::QuadExt> pt{{sys.x, dw::Rat(v(rng), w(rng))}, {sys.y, dw::Rat(v(rng), w(rng))}};
    const dw::QuadExt lhs = dw::evaluate(sys.P, pt) * dw::evaluate(fx, pt) + dw::evaluate(sys.Q, pt) * dw::evaluate(fy, pt);
    if (!(lhs == dw::evaluate(k, pt) * dw::evaluate(f, pt))) return false;
  }
  return true;
}

}  // namespace dwtest
