#include "dw/json_io.hpp"

#include <cmath>

namespace dw {

namespace {

std::string monomial_text(const Monomial& m, const RegistryPtr& registry) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [v, e] : m.factors()) {
    if (!out.empty()) out += '*';
    out += registry->name(v);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

Json strings(const std::vector<std::string>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

template <class T>
Json array_of(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json point(const std::array<double, 2>& p) { return Json::array({number_or_null(p[0]), number_or_null(p[1])}); }

}  // namespace

Json to_json(const SpeedCertificate& s) {
  return Json{{"m", s.m},
              {"cofactor", to_string(s.choice)},
              {"c_squared", s.c_squared.to_string()},
              {"c", to_json(s.c)},
              {"c0", to_json(s.c0)},
              {"admissible", s.admissible},
              {"note", s.note}};
}

Json to_json(const StageStatus& s) {
  return Json{{"name", s.name}, {"passed", s.passed}, {"diagnostics", s.diagnostics}};
}

Json to_json(const Approach& a) {
  return Json{{"point", to_json(a.point)},
              {"closest", number_or_null(a.closest)},
              {"s_closest", a.s_closest},
              {"terminal", number_or_null(a.terminal)}};
}

Json to_json(const CofactorCandidate& c) { return Json{{"k", to_json(c.k)}, {"source", to_string(c.source)}}; }

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const QuadExt& q) { return Json{{"exact", q.to_string()}, {"value", number_or_null(q.to_double())}}; }

Json to_json(const Number& n) {
  Json out{{"value", number_or_null(n.value)}};
  if (n.exact) out["exact"] = n.exact->to_string();
  return out;
}

Json to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back(Json{{"monomial", monomial_text(m, p.registry())}, {"coefficient", c.to_string()}});
  }
  return Json{{"text", p.to_string()}, {"terms", terms}};
}

Json to_json(const ODESystemSpec& sys) {
  Json state = Json::array();
  for (VarId v : sys.state) state.push_back(sys.registry->name(v));
  Json out{{"n", sys.n}, {"state", state}};
  out["speed"] = sys.speed ? to_json(*sys.speed) : Json("symbolic");
  out["numerator"] = to_json(sys.numerator);
  out["denominator"] = to_json(sys.denominator);
  if (sys.is_polynomial()) {
    Json rhs = Json::array();
    for (const auto& r : sys.rhs()) rhs.push_back(r.to_string());
    out["rhs"] = rhs;
  }
  out["exceptional_speeds"] = sys.exceptional_speeds;
  out["notes"] = strings(sys.notes);
  return out;
}

Json to_json(const PlanarSystem& sys) {
  return Json{{"P", to_json(sys.P)}, {"Q", to_json(sys.Q)}, {"degree", sys.degree()}, {"radicand", sys.radicand()}};
}

Json to_json(const Equilibrium& eq) {
  Json out{{"exact", eq.exact}};
  if (eq.exact) {
    Json c = Json::array();
    for (const auto& q : eq.exact_coords) c.push_back(q.to_string());
    out["coordinates"] = c;
  }
  Json v = Json::array();
  for (double d : eq.coords) v.push_back(number_or_null(d));
  out["values"] = v;
  out["multiplicity"] = eq.multiplicity;
  if (!eq.exact) out["residual"] = eq.residual;
  return out;
}

Json to_json(const EigenData& e) {
  Json out{{"exact", e.exact}, {"real", e.real}, {"hyperbolic", e.hyperbolic}, {"saddle", e.saddle}};
  if (e.exact) {
    out["trace"] = e.trace.to_string();
    out["determinant"] = e.determinant.to_string();
    out["lambda_minus"] = to_json(e.lambda_minus);
    out["lambda_plus"] = to_json(e.lambda_plus);
  } else {
    out["lambda_minus"] = Json{{"value", number_or_null(e.lambda_minus_value)}};
    out["lambda_plus"] = Json{{"value", number_or_null(e.lambda_plus_value)}};
  }
  if (e.real) {
    out["v_minus"] = point(e.v_minus);
    out["v_plus"] = point(e.v_plus);
  }
  if (!e.note.empty()) out["note"] = e.note;
  return out;
}

Json to_json(const DarbouxResult& r) {
  return Json{{"f", to_json(r.f)},
              {"k", to_json(r.k)},
              {"cofactor_source", to_string(r.source)},
              {"degree", r.degree},
              {"total_degree", r.total_degree},
              {"grading", Json::array({r.grading.wx, r.grading.wy})},
              {"nullspace_dim", r.nullspace_dim},
              {"contains_required_points", r.contains_required_points},
              {"irreducibility_screened", r.irreducibility_screened},
              {"notes", strings(r.notes)}};
}

Json to_json(const SearchReport& r) {
  return Json{{"curves", array_of(r.results)},
              {"screened_out", array_of(r.screened_out)},
              {"candidates", array_of(r.candidates)},
              {"warnings", strings(r.warnings)}};
}

Json to_json(const CurveCertificate& c) {
  Json out;
  out["passed"] = c.passed;
  out["negative"] = c.negative;
  out["options"] = Json{{"gamma_m_max", c.options.gamma_m_max},
                        {"recurrence_m_max", c.options.recurrence_m_max},
                        {"m_min", c.options.m_min},
                        {"m_max", c.options.m_max},
                        {"radicand", c.options.radicand ? Json(*c.options.radicand) : Json("auto")}};
  out["stages"] = array_of(c.stages);
  Json gamma = Json::array();
  for (const auto& g : c.gamma) gamma.push_back(Json{{"m", g.m}, {"vandermonde", g.vandermonde}, {"weighted", g.weighted}});
  out["gamma_identities"] = gamma;
  Json rec = Json::array();
  for (const auto& r : c.recurrence) rec.push_back(Json{{"m", r.m}, {"even", r.even_ok}, {"a1", r.a1_ok}});
  out["recurrence"] = rec;
  out["gamma_monotone"] = c.monotone;
  out["speeds"] = array_of(c.speeds);
  out["admissible"] = array_of(c.admissible);
  if (!c.admissible.empty()) {
    out["c_squared"] = c.admissible[0].c_squared.to_string();
    out["c"] = to_json(c.admissible[0].c);
  }
  if (c.system) out["system"] = to_json(*c.system);
  if (c.curve) out["curve"] = to_json(*c.curve);
  out["nullspace_dim"] = c.nullspace_dim;
  out["degree_flags"] = strings(c.degree_flags);
  out["leading_coefficients_ok"] = c.leading_coefficients_ok;
  out["residual_zero"] = c.residual_zero;
  if (!c.p.is_zero()) out["p"] = to_json(c.p);
  out["p_matches"] = c.p_matches;
  return out;
}

Json to_json(const TravelingWave& w) {
  Json out{{"profile", w.profile.to_string()},
           {"speed", to_json(w.speed)},
           {"a", number_or_null(w.a)},
           {"b", number_or_null(w.b)},
           {"boundary_conditions", w.boundary_conditions},
           {"p", to_json(w.p)},
           {"source", w.source}};
  if (w.exp_rate) out["exp_rate"] = to_json(*w.exp_rate);
  out["notes"] = strings(w.notes);
  return out;
}

Json to_json(const WaveResidual& r) {
  Json out{{"max_abs", number_or_null(r.max_abs)},
           {"tolerance", r.tolerance},
           {"samples", r.samples},
           {"symbolic_derivative", r.symbolic_derivative}};
  out["identically_zero"] = r.identically_zero ? Json(*r.identically_zero) : Json(nullptr);
  out["passed"] = r.passed;
  return out;
}

Json to_json(const BoundaryCheck& b) {
  return Json{{"left", number_or_null(b.left)},
              {"right", number_or_null(b.right)},
              {"limits", b.limits},
              {"monotone_tails", b.monotone_tails},
              {"passed", b.passed}};
}

Json to_json(const ShootingConfig& cfg) {
  return Json{{"epsilon", cfg.epsilon}, {"method", to_string(cfg.method)}, {"atol", cfg.atol},
              {"rtol", cfg.rtol},       {"h", cfg.h},                      {"h_max", cfg.h_max},
              {"h_min", cfg.h_min},     {"horizon", cfg.horizon},          {"tolerance", cfg.tolerance},
              {"divergence", cfg.divergence}, {"max_steps", cfg.max_steps}};
}

Json to_json(const Orbit& orbit, bool with_samples) {
  Json out{{"method", to_string(orbit.method)},
           {"status", to_string(orbit.status)},
           {"accepted", orbit.accepted},
           {"rejected", orbit.rejected},
           {"max_error_estimate", orbit.max_error_estimate},
           {"min_step", orbit.min_step},
           {"max_step", orbit.max_step},
           {"s_end", orbit.s.back()}};
  Json terminal = Json::array();
  for (double v : orbit.terminal()) terminal.push_back(number_or_null(v));
  out["terminal"] = terminal;
  if (with_samples) {
    Json samples = Json::array();
    for (std::size_t i = 0; i < orbit.s.size(); ++i) {
      Json row = Json::array({orbit.s[i]});
      for (double v : orbit.y[i]) row.push_back(number_or_null(v));
      samples.push_back(row);
    }
    out["samples"] = samples;
  }
  return out;
}

Json to_json(const ShootResult& r, bool with_samples) {
  Json out{{"eigen", to_json(r.eigen)},
           {"start", point(r.start)},
           {"direction", point(r.direction)},
           {"orbit", to_json(r.orbit, with_samples)},
           {"approaches", array_of(r.approaches)}};
  if (r.target) out["target"] = to_json(*r.target);
  out["converged"] = r.converged;
  return out;
}

Json to_json(const CatalogEntry& e) {
  Json params = Json::array();
  for (const auto& p : e.params) {
    Json d{{"name", p.name}, {"range", p.range}};
    if (auto it = e.defaults.find(p.name); it != e.defaults.end()) d["default"] = it->second.to_string();
    params.push_back(d);
  }
  return Json{{"name", e.name},
              {"pde", e.pde},
              {"params", params},
              {"profile", e.profile_text},
              {"p", e.p_text},
              {"exp_rational", e.exp_rational}};
}

}  // namespace dw
