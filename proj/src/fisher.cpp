#include "dw/fisher.hpp"

#include "dw/combinatorics.hpp"
#include "dw/error.hpp"
#include "dw/pde.hpp"
#include "dw/poly_parse.hpp"

namespace dw {

RegistryPtr fisher_symbols() {
  auto reg = VarRegistry::create();
  reg->intern("c0");
  reg->intern("c");
  return reg;
}

namespace {

RegistryPtr symbols_or_default(const RegistryPtr& symbols) { return symbols ? symbols : fisher_symbols(); }

}  // namespace

LeadingCoeffTable leading_coeffs_recurrence(unsigned m, const RegistryPtr& symbols) {
  if (m == 0) throw DomainError("m must be positive");
  LeadingCoeffTable t;
  t.m = m;
  t.registry = symbols_or_default(symbols);
  t.c0 = *t.registry->find("c0");
  t.c = *t.registry->find("c");
  const MultiPoly c0 = MultiPoly::variable(t.registry, t.c0);
  const MultiPoly c = MultiPoly::variable(t.registry, t.c);
  auto h = [&](unsigned j) { return -(c0 + c.scaled(QuadExt(static_cast<long>(j)))); };

  const unsigned n = 2 * m;
  t.a.assign(n + 1, MultiPoly(0).with_registry(t.registry));
  t.a[n] = MultiPoly(1).with_registry(t.registry);
  t.a[n - 1] = h(n);
  for (unsigned k = 1; k <= m; ++k) {
    t.a[n - 2 * k] = t.a[n - 2 * k + 2].scaled(QuadExt(Rat(static_cast<long>(n - 2 * k + 2), 3L * k)));
  }
  for (unsigned k = 1; k + 1 <= m; ++k) {
    const MultiPoly num = t.a[n - 2 * k + 1].scaled(QuadExt(static_cast<long>(n - 2 * k + 1))) + h(n - 2 * k) * t.a[n - 2 * k];
    t.a[n - 2 * k - 1] = num.scaled(QuadExt(Rat(1L, 3L * k + 1)));
  }
  return t;
}

Rat gamma_m(unsigned m) { return pochhammer(Rat(5, 6), m) / pochhammer(Rat(1, 3), m); }

Rat even_coefficient(unsigned m, unsigned j) { return Rat(binomial(m, j)) * Rat(2, 3).pow(j); }

ClosedFormCoeffs leading_coeffs_closed_form(unsigned m, const RegistryPtr& symbols) {
  if (m == 0) throw DomainError("m must be positive");
  const RegistryPtr reg = symbols_or_default(symbols);
  const MultiPoly c0 = MultiPoly::variable(reg, "c0");
  const MultiPoly c = MultiPoly::variable(reg, "c");
  ClosedFormCoeffs out;
  out.gamma = gamma_m(m);
  out.a0 = Rat(2, 3).pow(m);
  const MultiPoly inner = c0.scaled(QuadExt(5)) -
                          (c0.scaled(QuadExt(5)) + c.scaled(QuadExt(6L * m))).scaled(QuadExt(out.gamma));
  out.a1 = inner.scaled(QuadExt(out.a0 / Rat(5)));
  return out;
}

MultiPoly rising_factorial(const MultiPoly& p, unsigned m) {
  MultiPoly out = MultiPoly(1).with_registry(p.registry());
  for (unsigned i = 0; i < m; ++i) out *= p + MultiPoly(static_cast<long>(i));
  return out;
}

std::vector<GammaIdentityCheck> verify_gamma_identities(unsigned m_max) {
  auto reg = VarRegistry::create();
  const MultiPoly x = MultiPoly::variable(reg, "x");
  const MultiPoly y = MultiPoly::variable(reg, "y");
  std::vector<GammaIdentityCheck> out;
  for (unsigned m = 1; m <= m_max; ++m) {
    MultiPoly lhs3 = MultiPoly(0).with_registry(reg);
    MultiPoly lhs4 = MultiPoly(0).with_registry(reg);
    for (unsigned j = 0; j <= m; ++j) {
      const MultiPoly term = rising_factorial(x, j) * rising_factorial(y, m - j);
      const QuadExt bin{Rat(binomial(m, j))};
      lhs3 += term.scaled(bin);
      lhs4 += term.scaled(bin * QuadExt(static_cast<long>(m - j)));
    }
    GammaIdentityCheck check;
    check.m = m;
    check.vandermonde = lhs3 == rising_factorial(x + y, m);
    check.weighted = lhs4 == (y * rising_factorial(x + y + MultiPoly(1), m - 1)).scaled(QuadExt(static_cast<long>(m)));
    out.push_back(check);
  }
  return out;
}

std::string to_string(CofactorChoice choice) {
  switch (choice) {
    case CofactorChoice::LambdaPlus: return "lambda+";
    case CofactorChoice::LambdaMinus: return "lambda-";
    case CofactorChoice::LambdaSum: return "lambda+ + lambda-";
  }
  return "unknown";
}

SpeedCertificate consistency_condition(unsigned m, CofactorChoice choice) {
  if (m == 0) throw DomainError("m must be positive");
  SpeedCertificate cert;
  cert.m = m;
  cert.choice = choice;
  if (choice == CofactorChoice::LambdaSum) {
    // c0 = -c turns 5 c0 + 6 m c = 0 into (6m - 5) c = 0.
    cert.c_squared = Rat(0);
    cert.admissible = false;
    cert.note = "(6m-5)c = 0 forces c = 0, contradicting c >= 2";
    return cert;
  }
  const mpz_class D = mpz_class(6L * m) * (6L * m - 5);
  cert.c_squared = Rat(mpz_class(25), D);
  const SquareFreeSplit split = square_free_split(D);
  // c = 5 / sqrt(D) = 5 / (s sqrt(D')) = (5 / (s D')) sqrt(D').
  const Rat coeff(mpz_class(5), split.square_root * split.square_free);
  const bool root_is_rational = split.square_free == 1;
  const QuadExt magnitude = root_is_rational ? QuadExt(coeff) : QuadExt(0, coeff, split.square_free.get_si());
  // lambda = -6mc/5 is negative exactly when c > 0.
  cert.c = choice == CofactorChoice::LambdaMinus ? magnitude : -magnitude;
  cert.c0 = cert.c * QuadExt(Rat(-6L * m, 5));
  if (!(QuadExt(5) * cert.c0 + QuadExt(6L * m) * cert.c).is_zero() ||
      !(cert.c0 * cert.c0 + cert.c * cert.c0 - QuadExt(1)).is_zero()) {
    throw Error("internal: consistency solution does not satisfy its defining relations");
  }
  if (choice == CofactorChoice::LambdaPlus) {
    cert.note = "lambda+ > 0 needs c < 0";
    return cert;
  }
  cert.admissible = cert.c_squared >= Rat(4);
  cert.note = cert.admissible ? "c >= 2" : "c < 2";
  return cert;
}

MultiPoly expected_fisher_curve(const PlanarSystem& sys) {
  return parse_poly("y^2 + 2/3*sqrt(6)*(1-x)*y + 2/3*x*(1-x)^2", sys.registry);
}

namespace {

void stage(CurveCertificate& cert, const std::string& name, bool passed, std::string diagnostics) {
  cert.stages.push_back({name, passed, std::move(diagnostics)});
}

}  // namespace

CurveCertificate certify(const CertifyOptions& options) {
  CurveCertificate cert;
  cert.options = options;

  // 1. Pochhammer identities.
  cert.gamma = verify_gamma_identities(options.gamma_m_max);
  {
    std::string bad;
    for (const auto& g : cert.gamma) {
      if (!g.vandermonde || !g.weighted) bad += " m=" + std::to_string(g.m);
    }
    stage(cert, "gamma-identities", bad.empty(), bad.empty() ? "all identities exact" : "failed at" + bad);
    if (!bad.empty()) return cert;
  }

  // 2. Recurrence against closed forms.
  {
    const RegistryPtr symbols = fisher_symbols();
    std::string bad;
    for (unsigned m = 1; m <= options.recurrence_m_max; ++m) {
      const auto table = leading_coeffs_recurrence(m, symbols);
      const auto closed = leading_coeffs_closed_form(m, symbols);
      RecurrenceCheck check;
      check.m = m;
      check.even_ok = true;
      for (unsigned j = 0; j <= m; ++j) {
        check.even_ok = check.even_ok && table.a[2 * m - 2 * j] == MultiPoly(QuadExt(even_coefficient(m, j)));
      }
      check.even_ok = check.even_ok && table.a[0] == MultiPoly(QuadExt(closed.a0));
      check.a1_ok = table.a[1] == closed.a1;
      if (!check.even_ok || !check.a1_ok) bad += " m=" + std::to_string(m);
      cert.recurrence.push_back(check);
    }
    stage(cert, "recurrence-closed-form", bad.empty(), bad.empty() ? "exact agreement" : "mismatch at" + bad);
    if (!bad.empty()) return cert;
  }

  // 3. Speed enumeration.
  {
    for (unsigned m = options.m_min; m <= options.m_max; ++m) {
      for (auto choice : {CofactorChoice::LambdaPlus, CofactorChoice::LambdaMinus, CofactorChoice::LambdaSum}) {
        cert.speeds.push_back(consistency_condition(m, choice));
        if (cert.speeds.back().admissible) cert.admissible.push_back(cert.speeds.back());
      }
    }
    // c^2(m) = 25/(6m(6m-5)) decreases and c^2(2) < 4, so no m >= 2 is admissible.
    cert.monotone = consistency_condition(2, CofactorChoice::LambdaMinus).c_squared < Rat(4);
    for (unsigned m = 1; m < 100 && cert.monotone; ++m) {
      cert.monotone = consistency_condition(m + 1, CofactorChoice::LambdaMinus).c_squared <
                      consistency_condition(m, CofactorChoice::LambdaMinus).c_squared;
    }
    if (cert.admissible.empty()) {
      cert.negative = true;
      stage(cert, "speed-enumeration", false,
            "no admissible speed for m in [" + std::to_string(options.m_min) + ", " + std::to_string(options.m_max) + "]");
      return cert;
    }
    const bool unique = cert.admissible.size() == 1 && cert.admissible[0].m == 1 &&
                        cert.admissible[0].choice == CofactorChoice::LambdaMinus;
    stage(cert, "speed-enumeration", unique && cert.monotone,
          "admissible: m=" + std::to_string(cert.admissible[0].m) + " c^2=" + cert.admissible[0].c_squared.to_string() +
              " c=" + cert.admissible[0].c.to_string() + (cert.monotone ? "" : "; monotonicity check failed"));
    if (!unique || !cert.monotone) return cert;
  }

  // 4. Darboux solve on the reduced system.
  const SpeedCertificate& sc = cert.admissible[0];
  const Radicand d = options.radicand.value_or(sc.c.radicand());
  try {
    const QuadExt c = sc.c.with_radicand(d);
    const QuadExt k = sc.c0.with_radicand(d);
    const PDESpec pde = parse_pde(kFisherPde);
    const PlanarSystem fisher = to_planar(travelling_wave_reduce(pde, c));
    cert.system = change_coordinates(fisher, AffineMap::parse("1-x,y"));
    const PlanarSystem& sys = *cert.system;
    const unsigned n = 2 * sc.m;
    const std::vector<ExactPoint> points{{QuadExt(0), QuadExt(0)}, {QuadExt(1), QuadExt(0)}};
    FixedCofactorOptions graded;
    graded.grading = {2, 3};
    const auto results = solve_fixed_cofactor(sys, MultiPoly(k).with_registry(sys.registry), n, points, graded);
    cert.nullspace_dim = results.empty() ? 0 : results.front().nullspace_dim;
    if (results.size() != 1) {
      stage(cert, "darboux-solve", false,
            "expected a one-dimensional solution space, found " + std::to_string(results.size()) + " curves");
      return cert;
    }
    cert.curve = results.front();
    const auto h = as_univariate(cert.curve->f, sys.y);
    // Leading coefficients of h_j against a_j(2m) at (c0, c).
    const auto table = leading_coeffs_recurrence(sc.m);
    const std::map<VarId, QuadExt> at{{table.c0, k}, {table.c, c}};
    bool leading_ok = h.size() == n + 1;
    for (unsigned j = 0; leading_ok && j <= n; ++j) {
      // deg h_j: 3k for j = 2m - 2k, 3k - 2 for j = 2m - (2k - 1).
      const unsigned kk = (n - j + 1) / 2;
      const unsigned expected_degree = (n - j) % 2 == 0 ? 3 * kk : 3 * kk - 2;
      if (h[j].total_degree() != expected_degree) {
        cert.degree_flags.push_back("deg h_" + std::to_string(j) + " = " + std::to_string(h[j].total_degree()) +
                                    ", table says " + std::to_string(expected_degree));
      }
      const QuadExt lead = h[j].coefficient(Monomial::var(sys.x, h[j].total_degree()));
      leading_ok = leading_ok && lead == evaluate(table.a[j], at);
    }
    cert.leading_coefficients_ok = leading_ok;
    const bool matches = cert.curve->f == expected_fisher_curve(sys);
    stage(cert, "darboux-solve", matches && leading_ok && cert.curve->contains_required_points,
          std::string("f = ") + cert.curve->f.to_string() + "; k = " + k.to_string() +
              (leading_ok ? "" : "; leading coefficients disagree with the recurrence") +
              (cert.degree_flags.empty() ? "" : "; degree table flags raised"));
    if (!cert.stages.back().passed) return cert;
  } catch (const Error& e) {
    stage(cert, "darboux-solve", false, std::string("field Q(sqrt(") + std::to_string(d) + ")): " + e.what());
    return cert;
  }

  // 5. Independent re-verification.
  {
    const PlanarSystem& sys = *cert.system;
    cert.residual_zero = cofactor_residual(sys, cert.curve->f, cert.curve->k).is_zero();
    auto uv = VarRegistry::create();
    const MultiPoly U = MultiPoly::variable(uv, "U");
    const MultiPoly V = MultiPoly::variable(uv, "V");
    cert.p = substitute(cert.curve->f, {{sys.x, MultiPoly(1) - U}, {sys.y, V}}, uv).scaled(QuadExt(3));
    cert.p_matches = cert.p == parse_poly("3*V^2 + 2*sqrt(6)*U*V + 2*(1-U)*U^2", uv);
    stage(cert, "residual-check", cert.residual_zero && cert.p_matches,
          std::string(cert.residual_zero ? "cofactor residual is the zero polynomial" : "nonzero cofactor residual") +
              (cert.p_matches ? "; p(U,U') = " + cert.p.to_string() : "; p(U,U') mismatch"));
    if (!cert.stages.back().passed) return cert;
  }
  cert.passed = true;
  return cert;
}

}  // namespace dw
