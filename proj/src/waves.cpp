#include "dw/waves.hpp"

#include <cmath>
#include <numeric>

#include "dw/error.hpp"
#include "dw/resultant.hpp"
#include "dw/roots.hpp"

namespace dw {

WaveSymbols wave_symbols() {
  WaveSymbols s;
  s.registry = VarRegistry::create();
  s.U = s.registry->intern("U");
  s.V = s.registry->intern("V");
  return s;
}

MultiPoly primitive_part(const MultiPoly& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational_part().den().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.radical_part().den().get_mpz_t());
  }
  mpz_class g = 0;
  for (const auto& [m, c] : p.terms()) {
    for (const Rat* r : {&c.rational_part(), &c.radical_part()}) {
      if (r->is_zero()) continue;
      const mpz_class v = r->num() * (l / r->den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
  }
  Rat scale(l, g);
  if (p.leading_coefficient().sign() < 0) scale = -scale;
  return p.scaled(QuadExt(scale));
}

namespace {

std::optional<VarId> single_variable(const MultiPoly& a, const MultiPoly& b) {
  std::optional<VarId> v;
  for (const MultiPoly* p : {&a, &b}) {
    for (VarId w : p->variables()) {
      if (v && *v != w) throw DomainError("p_from_exp_rational: q1 and q2 must be polynomials in one variable z");
      v = w;
    }
  }
  return v;
}

unsigned exponent_gcd(const MultiPoly& p, VarId z) {
  unsigned g = 0;
  for (const auto& [m, c] : p.terms()) g = std::gcd(g, m.exponent(z));
  return g;
}

// p(z) -> p(w) with z^(g i) -> w^i.
MultiPoly compress(const MultiPoly& p, VarId z, unsigned g, const RegistryPtr& reg, VarId w) {
  MultiPoly out = MultiPoly(0).with_registry(reg);
  for (const auto& [m, c] : p.terms()) out += MultiPoly::term(reg, Monomial::var(w, m.exponent(z) / g), c);
  return out;
}

// f(x) with x = alpha U + beta, in the wave registry.
MultiPoly in_u(const MultiPoly& h, VarId x, const WaveSymbols& ws, const QuadExt& alpha, const QuadExt& beta) {
  const MultiPoly U = MultiPoly::variable(ws.registry, ws.U);
  return substitute(h, {{x, U.scaled(alpha) + MultiPoly(beta)}}, ws.registry).with_registry(ws.registry);
}

Number exact_or_float(const MultiPoly& constant) { return Number(constant.constant_term()); }

}  // namespace

MultiPoly p_from_exp_rational(const MultiPoly& q1, const MultiPoly& q2, const QuadExt& lambda) {
  if (q2.is_zero()) throw DomainError("p_from_exp_rational: q2 = 0");
  if (lambda.is_zero()) throw DomainError("p_from_exp_rational: lambda = 0");
  const auto zv = single_variable(q1, q2);
  if (!zv) throw DomainError("constant profile");
  const unsigned g = std::gcd(exponent_gcd(q1, *zv), exponent_gcd(q2, *zv));

  auto reg = VarRegistry::create();
  const VarId u = reg->intern("U"), v = reg->intern("V"), w = reg->intern("w");
  const MultiPoly a1 = compress(q1, *zv, g, reg, w), a2 = compress(q2, *zv, g, reg, w);
  const QuadExt rate = lambda * QuadExt(static_cast<long>(g));
  const MultiPoly W = MultiPoly::variable(reg, w);
  const MultiPoly q3 = (partial_derivative(a1, w) * a2 - a1 * partial_derivative(a2, w)) * W.scaled(rate);
  if (q3.is_zero()) throw DomainError("constant profile");
  const MultiPoly q4 = a2 * a2;
  const MultiPoly A = a2 * MultiPoly::variable(reg, u) - a1;
  const MultiPoly B = q4 * MultiPoly::variable(reg, v) - q3;
  const MultiPoly res = sylvester_resultant(A, B, w);
  if (res.is_zero()) throw DomainError("constant profile");
  const WaveSymbols ws = wave_symbols();
  return primitive_part(substitute(res, {}, ws.registry).with_registry(ws.registry));
}

BranchODE branch_ode(const MultiPoly& f, VarId x, VarId y, int sign, const QuadExt& alpha, const QuadExt& beta,
                     double u_min, double u_max) {
  const auto h = as_univariate(f, y);
  if (h.size() != 3) throw DomainError("branch_ode: curve is not quadratic in y");
  for (const auto& hj : h) {
    for (VarId w : hj.variables()) {
      if (w != x) throw DomainError("branch_ode: coefficients must be polynomials in x alone");
    }
  }
  BranchODE out;
  out.symbols = wave_symbols();
  out.sign = sign >= 0 ? 1 : -1;
  out.h0 = in_u(h[0], x, out.symbols, alpha, beta);
  out.h1 = in_u(h[1], x, out.symbols, alpha, beta);
  out.h2 = in_u(h[2], x, out.symbols, alpha, beta);
  out.discriminant = out.h1 * out.h1 - (out.h2 * out.h0).scaled(QuadExt(4));
  const ClosedForm h1 = ClosedForm::from_poly(out.h1, out.symbols.U);
  const ClosedForm two_h2 = ClosedForm(2) * ClosedForm::from_poly(out.h2, out.symbols.U);
  if (out.discriminant.is_zero()) {
    out.multiplicity = 2;
    out.rhs = -h1 / two_h2;
    out.notes.push_back("double branch: discriminant vanishes identically");
    return out;
  }
  const ClosedForm disc = ClosedForm::from_poly(out.discriminant, out.symbols.U);
  int negative = 0;
  constexpr int kSamples = 101;
  for (int i = 0; i < kSamples; ++i) {
    const double u = u_min + (u_max - u_min) * i / (kSamples - 1);
    if (disc(u) < 0.0) ++negative;
  }
  if (negative == kSamples) throw DomainError("branch_ode: no real branch (discriminant negative on the interval)");
  if (negative > 0) out.notes.push_back("discriminant negative on part of the interval");
  out.rhs = (-h1 + ClosedForm(out.sign) * sqrt(disc)) / two_h2;
  return out;
}

LogisticFamily solve_logistic(const Number& alpha, const Number& u1, const Number& u3) {
  if (u1.value == u3.value) throw DomainError("solve_logistic: u1 = u3 (degenerate)");
  if (alpha.value == 0.0) throw DomainError("solve_logistic: alpha = 0");
  LogisticFamily out;
  out.rate = (ClosedForm(alpha) * (ClosedForm(u3) - ClosedForm(u1))).constant();
  const ClosedForm e = exp(ClosedForm(out.rate) * ClosedForm::var());
  const ClosedForm k = ClosedForm::k();
  out.profile = (ClosedForm(u3) + k * ClosedForm(u1) * e) / (ClosedForm(1) + k * e);
  out.a = out.rate.value > 0 ? u3.value : u1.value;
  out.b = out.rate.value > 0 ? u1.value : u3.value;
  return out;
}

LogisticFamily solve_power_logistic(unsigned q, const Number& kappa) {
  if (q == 0) throw DomainError("solve_power_logistic: q must be positive");
  if (kappa.value == 0.0) throw DomainError("solve_power_logistic: zero coefficient");
  LogisticFamily out;
  out.rate = (ClosedForm(static_cast<long>(q)) * ClosedForm(kappa)).constant();
  const ClosedForm e = exp(ClosedForm(out.rate) * ClosedForm::var());
  out.profile = (ClosedForm(1) + ClosedForm::k() * e).pow(Rat(-1, static_cast<long>(q)));
  out.a = out.rate.value > 0 ? 1.0 : 0.0;
  out.b = out.rate.value > 0 ? 0.0 : 1.0;
  return out;
}

TravelingWave fisher_reconstruct(const DarbouxResult& curve, const PlanarSystem& sys, const Number& speed) {
  const QuadExt alpha(-1), beta(1);  // x = 1 - U
  const auto h = as_univariate(curve.f, sys.y);
  if (h.size() != 3) throw DomainError("fisher_reconstruct: curve is not quadratic in y");
  WaveSymbols ws = wave_symbols();
  const MultiPoly h0 = in_u(h[0], sys.x, ws, alpha, beta), h1 = in_u(h[1], sys.x, ws, alpha, beta),
                  h2 = in_u(h[2], sys.x, ws, alpha, beta);
  if (!h2.is_constant() || h2.is_zero()) throw DomainError("fisher_reconstruct: pattern mismatch (leading coefficient)");
  const MultiPoly U = MultiPoly::variable(ws.registry, ws.U);
  const QuadExt two_h2 = QuadExt(2) * h2.constant_term();
  const QuadExt A = h1.coefficient(Monomial::var(ws.U)) / two_h2;
  const MultiPoly disc = h1 * h1 - (h2 * h0).scaled(QuadExt(4));
  const QuadExt scale = A * two_h2;
  if (A.is_zero() || !(h1 == U.scaled(scale)) || !(disc == U.pow(3).scaled(scale * scale))) {
    throw DomainError("fisher_reconstruct: pattern mismatch (branch is not U' = -A (1 - sqrt(U)) U)");
  }
  // U' = -A (1 - sqrt U) U; with W = sqrt U, W' = (A/2) (W - 0)(W - 1).
  const QuadExt half_a = A / QuadExt(2);
  const LogisticFamily w = solve_logistic(Number(half_a), Number(0), Number(1));

  TravelingWave out;
  out.profile = w.profile.pow(2);
  out.speed = speed;
  out.a = w.a * w.a;
  out.b = w.b * w.b;
  out.symbols = ws;
  out.p = primitive_part(substitute(curve.f, {{sys.x, MultiPoly(1) - U}, {sys.y, MultiPoly::variable(ws.registry, ws.V)}},
                                    ws.registry)
                             .with_registry(ws.registry));
  out.source = "reconstructed";
  out.exp_rate = half_a;
  out.notes.push_back("W = sqrt(U) solves W' = " + half_a.to_string() + " * W * (W - 1)");
  return out;
}

FamilyCurve family_curve(const MultiPoly& f, VarId x, const MultiPoly& c, const MultiPoly& d) {
  RegistryPtr reg = merge_registries(merge_registries(f.registry(), c.registry()), d.registry());
  if (!reg) reg = VarRegistry::create();
  if (d.is_constant() && d.constant_term().sign() <= 0) throw DomainError("family_curve: d must be positive");
  const VarId y = reg->intern("y");
  const MultiPoly Y = MultiPoly::variable(reg, y);
  const MultiPoly fx = f.with_registry(reg);
  const MultiPoly fp = partial_derivative(fx, x);

  FamilyCurve out;
  out.sys.registry = reg;
  out.sys.x = x;
  out.sys.y = y;
  MultiPoly k;
  if (d.is_constant()) {
    const MultiPoly r = c.scaled(d.constant_term().inverse());
    out.sys.P = Y;
    out.sys.Q = -(r * Y) + fx * (fp + r);
    k = -(fp + r);
  } else {
    out.time_scaled = true;
    out.sys.P = d * Y;
    out.sys.Q = -(c * Y) + fx * (d * fp + c);
    k = -(d * fp + c);
    out.notes.push_back("field and cofactor multiplied by d (time rescaling)");
  }
  out.curve.f = Y - fx;
  out.curve.k = k;
  out.curve.degree = out.curve.f.total_degree();
  out.curve.total_degree = out.curve.degree;
  out.curve.nullspace_dim = 1;
  out.curve.contains_required_points = true;
  out.curve.source = CofactorSource::UserFixed;
  out.residual_zero = cofactor_residual(out.sys, out.curve.f, k).is_zero();
  if (!out.residual_zero) throw Error("internal: family curve fails the cofactor equation");

  if (fx.is_zero()) {
    out.notes.push_back("degenerate: f = 0 gives the curve y = 0 and constant waves only");
    return out;
  }
  const bool numeric = c.is_constant() && d.is_constant() && fx.variables() == std::vector<VarId>{x};
  if (!numeric) return out;

  auto coeffs = as_univariate(fx, x);
  std::vector<QuadExt> cs;
  for (const auto& p : coeffs) cs.push_back(p.constant_term());
  std::optional<LogisticFamily> family;
  const unsigned deg = static_cast<unsigned>(cs.size() - 1);
  const QuadExt lead = cs.back();
  if (deg == 2) {
    std::vector<QuadExt> monic;
    for (const auto& q : cs) monic.push_back(q / lead);
    const auto roots = real_roots(monic, lead.radicand());
    if (roots.size() == 2 && roots[0].exact && roots[1].exact) {
      // alpha (u3 - u1) > 0 orders the boundary values as U(-inf) = u3.
      const bool up = lead.sign() > 0;
      const QuadExt u1 = up ? roots[0].exact_value : roots[1].exact_value;
      const QuadExt u3 = up ? roots[1].exact_value : roots[0].exact_value;
      family = solve_logistic(Number(lead), Number(u1), Number(u3));
      out.notes.push_back("U' = f(U) is logistic with alpha = " + lead.to_string() + ", u1 = " + u1.to_string() +
                          ", u3 = " + u3.to_string());
    }
  } else if (deg >= 2) {
    unsigned nonzero = 0;
    for (const auto& q : cs) nonzero += q.is_zero() ? 0 : 1;
    if (nonzero == 2 && cs[0].is_zero() && (cs[1] + lead).is_zero() && lead.sign() > 0) {
      family = solve_power_logistic(deg - 1, Number(lead));
      out.notes.push_back("U' = f(U) is power-logistic with q = " + std::to_string(deg - 1));
    }
  }
  if (!family) {
    out.notes.push_back("no closed form for U' = f(U); left as a branch ODE");
    return out;
  }
  TravelingWave wave;
  wave.profile = family->profile;
  wave.speed = exact_or_float(c);
  wave.a = family->a;
  wave.b = family->b;
  wave.symbols = wave_symbols();
  const MultiPoly U = MultiPoly::variable(wave.symbols.registry, wave.symbols.U);
  wave.p = MultiPoly::variable(wave.symbols.registry, wave.symbols.V) -
           substitute(fx, {{x, U}}, wave.symbols.registry).with_registry(wave.symbols.registry);
  wave.source = "reconstructed";
  if (family->rate.exact) wave.exp_rate = *family->rate.exact;
  out.wave = std::move(wave);
  return out;
}

WaveResidual wave_residual(const TravelingWave& wave, double s_min, double s_max, std::size_t samples,
                           std::optional<double> tolerance) {
  WaveResidual out;
  out.samples = samples;
  out.symbolic_derivative = wave.profile.has_symbolic_derivative();
  out.tolerance = tolerance.value_or(1e-8);
  const HornerPoly p(wave.p, {wave.symbols.U, wave.symbols.V});
  const ClosedForm d = out.symbolic_derivative ? wave.profile.derivative() : ClosedForm();
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = samples == 1 ? s_min : s_min + (s_max - s_min) * static_cast<double>(i) / (samples - 1);
    const double u = wave.profile(s);
    const double v = out.symbolic_derivative ? d(s) : wave.profile.derivative_at(s, 1);
    const double vals[2] = {u, v};
    const double r = std::abs(p(vals));
    if (!(r <= out.max_abs)) out.max_abs = std::isnan(r) ? INFINITY : std::max(out.max_abs, r);
  }
  if (wave.exp_rate) {
    if (auto er = to_exp_rational(wave.profile, *wave.exp_rate)) {
      out.identically_zero = vanishes_identically(wave.p, wave.symbols.U, wave.symbols.V, *er);
    }
  }
  out.passed = out.max_abs < out.tolerance && out.identically_zero.value_or(true);
  return out;
}

}  // namespace dw
