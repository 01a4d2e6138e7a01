#include "dw/darboux.hpp"

#include <algorithm>
#include <set>

#include "dw/error.hpp"
#include "dw/linalg.hpp"

namespace dw {

std::string to_string(CofactorSource source) {
  switch (source) {
    case CofactorSource::UserFixed: return "user-fixed";
    case CofactorSource::LambdaPlus: return "lambda+";
    case CofactorSource::LambdaMinus: return "lambda-";
    case CofactorSource::LambdaSum: return "lambda+ + lambda-";
    case CofactorSource::Enumeration: return "enumeration";
  }
  return "unknown";
}

MultiPoly cofactor_residual(const PlanarSystem& sys, const MultiPoly& f, const MultiPoly& k) {
  return sys.P * partial_derivative(f, sys.x) + sys.Q * partial_derivative(f, sys.y) - k * f;
}

MultiPoly normalize_curve(const MultiPoly& f, VarId y) {
  if (f.is_zero()) return f;
  const auto coeffs = as_univariate(f, y);
  return f.scaled(coeffs.back().leading_coefficient().inverse());
}

std::vector<Monomial> monomials_up_to(VarId x, VarId y, unsigned n, Grading grading) {
  if (grading.wx == 0 || grading.wy == 0) throw DomainError("grading weights must be positive");
  const unsigned bound = grading.wy * n;
  std::vector<Monomial> out;
  for (unsigned j = 0; grading.wy * j <= bound; ++j) {
    for (unsigned i = 0; grading.wx * i + grading.wy * j <= bound; ++i) {
      std::vector<Monomial::Factor> factors;
      if (i) factors.emplace_back(x, i);
      if (j) factors.emplace_back(y, j);
      out.push_back(Monomial::from_factors(factors));
    }
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    const unsigned wa = grading.weight(a, x, y), wb = grading.weight(b, x, y);
    if (wa != wb) return wa < wb;
    return grlex_compare(a, b) < 0;
  });
  return out;
}

std::vector<DarbouxResult> solve_fixed_cofactor(const PlanarSystem& sys, const MultiPoly& k, unsigned n,
                                                const std::vector<ExactPoint>& required_points,
                                                const FixedCofactorOptions& options) {
  const auto columns = monomials_up_to(sys.x, sys.y, n, options.grading);
  std::vector<MultiPoly> basis;
  std::vector<MultiPoly> images;
  std::set<Monomial, GrLexGreater> rows_seen;
  for (const auto& m : columns) {
    basis.push_back(MultiPoly::term(sys.registry, m, QuadExt(1)));
    images.push_back(cofactor_residual(sys, basis.back(), k));
    for (const auto& [mono, c] : images.back().terms()) rows_seen.insert(mono);
  }
  std::vector<Monomial> row_monomials(rows_seen.begin(), rows_seen.end());

  Matrix<QuadExt> a;
  for (const auto& r : row_monomials) {
    std::vector<QuadExt> row(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) row[j] = images[j].coefficient(r);
    a.push_back(std::move(row));
  }
  for (const auto& p : required_points) {
    const std::map<VarId, QuadExt> point{{sys.x, p[0]}, {sys.y, p[1]}};
    std::vector<QuadExt> row(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) row[j] = evaluate(basis[j], point);
    a.push_back(std::move(row));
  }

  const auto null = nullspace(std::move(a), columns.size());
  std::vector<DarbouxResult> out;
  for (const auto& v : null) {
    MultiPoly f = MultiPoly(0).with_registry(sys.registry);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!v[j].is_zero()) f += basis[j].scaled(v[j]);
    }
    DarbouxResult r;
    unsigned weight = 0;
    for (const auto& [mono, coeff] : f.terms()) weight = std::max(weight, options.grading.weight(mono, sys.x, sys.y));
    r.degree = options.grading.level(weight);
    r.total_degree = f.total_degree();
    r.grading = options.grading;
    if (options.exact_degree && r.degree != n) continue;
    r.f = normalize_curve(f, sys.y);
    r.k = k;
    r.nullspace_dim = null.size();
    if (!cofactor_residual(sys, r.f, k).is_zero()) {
      throw Error("internal: nullspace vector fails the cofactor equation");
    }
    r.contains_required_points = std::all_of(required_points.begin(), required_points.end(), [&](const ExactPoint& p) {
      return evaluate(r.f, {{sys.x, p[0]}, {sys.y, p[1]}}).is_zero();
    });
    if (null.size() > 1) r.notes.push_back("nullspace dimension " + std::to_string(null.size()) + ": shared basis");
    out.push_back(std::move(r));
  }
  return out;
}

CandidateReport eigenvalue_cofactor_candidates(const PlanarSystem& sys, const std::vector<Equilibrium>& points,
                                               Radicand d) {
  CandidateReport report;
  bool any = false;
  std::vector<std::pair<QuadExt, CofactorSource>> current;
  for (const auto& p : points) {
    const std::string where = "(" + std::to_string(p.coords[0]) + ", " + std::to_string(p.coords[1]) + ")";
    if (!p.exact) {
      report.warnings.push_back("point " + where + " is not exact: no cofactor constraint");
      continue;
    }
    const EigenData e = jacobian_eigen(sys, p, d);
    if (!e.saddle || !e.hyperbolic) {
      report.warnings.push_back("point " + where + " is not a hyperbolic saddle: no cofactor constraint");
      continue;
    }
    if (!e.exact) {
      report.warnings.push_back("eigenvalues at " + where + " are not in Q(sqrt(" + std::to_string(d) +
                                ")): no cofactor constraint");
      continue;
    }
    std::vector<std::pair<QuadExt, CofactorSource>> here{{e.lambda_plus, CofactorSource::LambdaPlus},
                                                        {e.lambda_minus, CofactorSource::LambdaMinus},
                                                        {e.lambda_plus + e.lambda_minus, CofactorSource::LambdaSum}};
    if (!any) {
      current = here;
      any = true;
    } else {
      std::vector<std::pair<QuadExt, CofactorSource>> kept;
      for (const auto& c : current) {
        if (std::any_of(here.begin(), here.end(), [&](const auto& h) { return h.first == c.first; })) kept.push_back(c);
      }
      if (kept.empty()) report.warnings.push_back("saddle candidate sets have empty intersection");
      current = std::move(kept);
    }
  }
  for (const auto& [value, source] : current) {
    report.candidates.push_back({MultiPoly(value).with_registry(sys.registry), source});
  }
  return report;
}

std::optional<MultiPoly> perfect_root(const MultiPoly& f, unsigned e) {
  if (e < 2 || f.is_zero()) return std::nullopt;
  if (f.total_degree() % e != 0) return std::nullopt;
  const MultiPoly monic = make_monic(f);
  const Monomial& lead = monic.leading_monomial();
  std::vector<Monomial::Factor> root_factors;
  for (const auto& [v, k] : lead.factors()) {
    if (k % e) return std::nullopt;
    root_factors.emplace_back(v, k / e);
  }
  const RegistryPtr& reg = monic.registry();
  const Monomial root_lead = Monomial::from_factors(root_factors);
  MultiPoly g = MultiPoly::term(reg, root_lead, QuadExt(1));
  // e * LT(g)^(e-1) is the coefficient of each new term in g^e.
  const MultiPoly lead_power = MultiPoly::term(reg, root_lead, QuadExt(1)).pow(e - 1).scaled(QuadExt(static_cast<long>(e)));
  const Monomial& lp_m = lead_power.leading_monomial();
  for (std::size_t guard = 0; guard < 100000; ++guard) {
    const MultiPoly r = monic - g.pow(e);
    if (r.is_zero()) return g;
    const Monomial& rm = r.leading_monomial();
    if (!lp_m.divides(rm)) return std::nullopt;
    const Monomial t = rm.quotient(lp_m);
    if (grlex_compare(t, root_lead) >= 0) return std::nullopt;
    if (!g.coefficient(t).is_zero()) return std::nullopt;
    g += MultiPoly::term(reg, t, r.leading_coefficient() / lead_power.leading_coefficient());
  }
  return std::nullopt;
}

bool irreducibility_screen(const MultiPoly& f, const std::vector<MultiPoly>& previous) {
  for (const auto& g : previous) {
    if (g.total_degree() == 0 || g.total_degree() >= f.total_degree()) continue;
    if (trial_divide(f, g)) return false;
  }
  for (unsigned e = 2; e <= f.total_degree(); ++e) {
    if (f.total_degree() % e == 0 && perfect_root(f, e)) return false;
  }
  return true;
}

SearchReport search_constant_cofactor(const PlanarSystem& sys, unsigned max_degree,
                                      const std::vector<Equilibrium>& required_points, Radicand d,
                                      Grading grading) {
  SearchReport report;
  FixedCofactorOptions options;
  options.grading = grading;
  CandidateReport cands = eigenvalue_cofactor_candidates(sys, required_points, d);
  report.candidates = cands.candidates;
  report.warnings = cands.warnings;
  std::vector<ExactPoint> pts;
  for (const auto& p : required_points) {
    if (p.exact) pts.push_back({p.exact_coords[0], p.exact_coords[1]});
  }
  std::vector<MultiPoly> found;
  for (unsigned n = 1; n <= max_degree; ++n) {
    for (const auto& cand : report.candidates) {
      for (auto& r : solve_fixed_cofactor(sys, cand.k, n, pts, options)) {
        r.source = cand.source;
        if (std::any_of(found.begin(), found.end(), [&](const MultiPoly& g) { return g == r.f; })) continue;
        r.irreducibility_screened = irreducibility_screen(r.f, found);
        found.push_back(r.f);
        (r.irreducibility_screened ? report.results : report.screened_out).push_back(std::move(r));
      }
    }
  }
  return report;
}

}  // namespace dw
