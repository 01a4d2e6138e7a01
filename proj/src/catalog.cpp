#include <cmath>

#include "dw/error.hpp"
#include "dw/fisher.hpp"
#include "dw/poly_parse.hpp"
#include "dw/waves.hpp"

namespace dw {

namespace {

QuadExt get(const ParamBinding& b, const std::string& name) {
  auto it = b.find(name);
  if (it == b.end()) throw DomainError("missing parameter '" + name + "'");
  return it->second;
}

// Printed p with parameters substituted, in the wave registry.
MultiPoly bind_text(const std::string& text, const ParamBinding& binding, const WaveSymbols& ws) {
  auto reg = VarRegistry::create();
  const MultiPoly raw = parse_poly(text, reg);
  std::map<VarId, MultiPoly> values;
  for (const auto& [name, value] : binding) {
    if (auto id = reg->find(name)) values.emplace(*id, MultiPoly(value));
  }
  return substitute(raw, values, ws.registry).with_registry(ws.registry);
}

ParamSpec any(const std::string& name) { return {name, "any real", [](const QuadExt&) { return true; }}; }
ParamSpec nonzero(const std::string& name) {
  return {name, "nonzero", [](const QuadExt& v) { return !v.is_zero(); }};
}
ParamSpec positive(const std::string& name) {
  return {name, "> 0", [](const QuadExt& v) { return v.sign() > 0; }};
}

ParamBinding pb(std::initializer_list<std::pair<const std::string, const char*>> items) {
  ParamBinding b;
  for (const auto& [k, v] : items) b.emplace(k, parse_constant(v));
  return b;
}

std::string same_pde(const std::string& text, const ParamBinding&) { return text; }

TravelingWave base(const ParamBinding& b, const std::string& p_text) {
  TravelingWave w;
  w.symbols = wave_symbols();
  w.p = bind_text(p_text, b, w.symbols);
  w.source = "catalog";
  return w;
}

CatalogEntry burgers() {
  CatalogEntry e;
  e.name = "burgers";
  e.pde = "u_t + u*u_x - a*u_xx = 0";
  e.params = {nonzero("a"), nonzero("c")};
  e.profile_text = "c*(1 - tanh(c/(2*a)*s))";
  e.p_text = "2*a*V + (2*c - U)*U";
  e.exp_rational = true;
  e.defaults = pb({{"a", "1"}, {"c", "1"}});
  e.samples = {pb({{"a", "1"}, {"c", "1"}}), pb({{"a", "1/2"}, {"c", "2"}}), pb({{"a", "2"}, {"c", "1/2"}}),
               pb({{"a", "3"}, {"c", "3/2"}}), pb({{"a", "-1"}, {"c", "1"}})};
  const std::string p_text = e.p_text;
  e.build = [p_text](const ParamBinding& b) {
    const QuadExt a = get(b, "a"), c = get(b, "c");
    TravelingWave w = base(b, p_text);
    const QuadExt mu = c / (QuadExt(2) * a);
    w.profile = ClosedForm(c) * (ClosedForm(1) - tanh(ClosedForm(mu) * ClosedForm::var()));
    w.speed = c;
    w.a = mu.sign() > 0 ? 2 * c.to_double() : 0.0;
    w.b = mu.sign() > 0 ? 0.0 : 2 * c.to_double();
    w.exp_rate = mu;
    return w;
  };
  return e;
}

CatalogEntry kdv() {
  CatalogEntry e;
  e.name = "kdv";
  e.pde = "u_t - 6*u*u_x + u_xxx = 0";
  e.params = {positive("c")};
  e.profile_text = "-c/(2*cosh(sqrt(c)/2*s)^2)";
  e.p_text = "V^2 - (c + 2*U)*U^2";
  e.defaults = pb({{"c", "4"}});
  e.samples = {pb({{"c", "4"}}), pb({{"c", "1"}}), pb({{"c", "9"}}), pb({{"c", "2"}}), pb({{"c", "1/2"}})};
  const std::string p_text = e.p_text;
  e.build = [p_text](const ParamBinding& b) {
    const QuadExt c = get(b, "c");
    TravelingWave w = base(b, p_text);
    const Number root = sqrt_number(c);
    const ClosedForm half_root = ClosedForm(root) / ClosedForm(2);
    w.profile = -ClosedForm(c) / (ClosedForm(2) * cosh(half_root * ClosedForm::var()).pow(2));
    w.speed = c;
    w.a = w.b = 0.0;
    if (half_root.constant().exact) w.exp_rate = *half_root.constant().exact;
    w.notes.push_back("homoclinic: a = b = 0");
    return w;
  };
  return e;
}

CatalogEntry boussinesq() {
  CatalogEntry e;
  e.name = "boussinesq";
  e.pde = "u_tt + u*u_xx - u_xx + u_x^2 - u_xxxx = 0";
  e.params = {nonzero("k"), any("c")};
  e.profile_text = "(1 - 8*k^2 - c^2) + 12*k^2*tanh(k*s)^2";
  e.p_text =
      "3*V^2 - U^3 - 3*(c - 1)*(1 + c)*U^2 - 3*(c^2 - 1 + 4*k^2)*(c^2 - 1 - 4*k^2)*U"
      " - (c^2 - 1 + 8*k^2)*(c^2 - 1 - 4*k^2)^2";
  e.defaults = pb({{"k", "1/2"}, {"c", "1"}});
  e.samples = {pb({{"k", "1/2"}, {"c", "1"}}), pb({{"k", "1"}, {"c", "2"}}), pb({{"k", "1/3"}, {"c", "1/2"}}),
               pb({{"k", "1/4"}, {"c", "3"}}), pb({{"k", "1"}, {"c", "0"}})};
  const std::string p_text = e.p_text;
  e.build = [p_text](const ParamBinding& b) {
    const QuadExt k = get(b, "k"), c = get(b, "c");
    TravelingWave w = base(b, p_text);
    const QuadExt k2 = k * k;
    const QuadExt offset = QuadExt(1) - QuadExt(8) * k2 - c * c;
    w.profile = ClosedForm(offset) + ClosedForm(QuadExt(12) * k2) * tanh(ClosedForm(k) * ClosedForm::var()).pow(2);
    w.speed = c;
    w.a = w.b = (offset + QuadExt(12) * k2).to_double();
    w.exp_rate = k;
    w.notes.push_back("equal limits at both ends (homoclinic type)");
    return w;
  };
  return e;
}

CatalogEntry imbq() {
  CatalogEntry e;
  e.name = "imbq";
  e.pde = "u_tt - u*u_xx - u_xx - u_x^2 - u_xxtt = 0";
  e.params = {nonzero("c"), nonzero("k"),
              {"m", "[0, 1]", [](const QuadExt& v) { return v.sign() >= 0 && (QuadExt(1) - v).sign() >= 0; }}};
  e.profile_text = "c^2 - 1 + 4*c^2*k^2 - 8*c^2*m*k^2 + 12*c^2*m*k^2*cn(k*s, m)^2";
  e.p_text =
      "3*c^2*V^2 + U^3 + 3*(1 - c^2)*U^2 + (48*c^4*(m - m^2 - 1)*k^4 + 3*(1 - c^2)^2)*U"
      " + 64*c^6*(-1 + 2*m)*(m + 1)*(m - 2)*k^6 + 48*c^4*(1 - c^2)*(m - m^2 - 1)*k^4 + (1 - c^2)^3";
  e.defaults = pb({{"c", "2"}, {"k", "1/2"}, {"m", "1/2"}});
  e.samples = {pb({{"c", "2"}, {"k", "1/2"}, {"m", "1/2"}}), pb({{"c", "1"}, {"k", "1"}, {"m", "0"}}),
               pb({{"c", "3/2"}, {"k", "1/3"}, {"m", "1"}}), pb({{"c", "1/2"}, {"k", "1"}, {"m", "1/4"}}),
               pb({{"c", "2"}, {"k", "1/4"}, {"m", "3/4"}})};
  const std::string p_text = e.p_text;
  e.build = [p_text](const ParamBinding& b) {
    const QuadExt c = get(b, "c"), k = get(b, "k"), m = get(b, "m");
    TravelingWave w = base(b, p_text);
    const QuadExt c2k2 = c * c * k * k;
    const QuadExt offset = c * c - QuadExt(1) + QuadExt(4) * c2k2 - QuadExt(8) * c2k2 * m;
    w.profile = ClosedForm(offset) +
                ClosedForm(QuadExt(12) * c2k2 * m) * jacobi_cn(ClosedForm(k) * ClosedForm::var(), m.to_double()).pow(2);
    w.speed = c;
    if (m.is_one()) {
      w.a = w.b = offset.to_double();
      w.notes.push_back("m = 1: cn = sech, a pulse with equal limits");
    } else {
      w.boundary_conditions = false;
      w.notes.push_back("algebraic relation verified; boundary conditions (2) not applicable");
      w.notes.push_back("periodic, not front");
    }
    return w;
  };
  return e;
}

CatalogEntry fisher() {
  CatalogEntry e;
  e.name = "fisher";
  e.pde = kFisherPde;
  e.profile_text = "(1 + k*exp(s/sqrt(6)))^(-2)";
  e.p_text = "3*V^2 + 2*sqrt(6)*U*V + 2*(1 - U)*U^2";
  e.exp_rational = true;
  e.samples = {ParamBinding{}};
  const std::string p_text = e.p_text;
  e.build = [p_text](const ParamBinding& b) {
    TravelingWave w = base(b, p_text);
    const QuadExt mu = QuadExt::parse("1/6*sqrt(6)");
    w.profile = (ClosedForm(1) + ClosedForm::k() * exp(ClosedForm(mu) * ClosedForm::var())).pow(-2);
    w.speed = QuadExt::parse("5/6*sqrt(6)");
    w.a = 1.0;
    w.b = 0.0;
    w.exp_rate = mu;
    return w;
  };
  return e;
}

// U' = alpha (U - u1)(U - u3) with alpha = sqrt(a/(2d)).
CatalogEntry nagumo() {
  CatalogEntry e;
  e.name = "nagumo";
  e.pde = "u_t = a*(u - u1)*(u2 - u)*(u - u3) + d*u_xx";
  e.params = {positive("a"), positive("d"), any("u1"), any("u2"), any("u3")};
  e.profile_text = "(u3 + k*u1*exp(alpha*(u3 - u1)*s))/(1 + k*exp(alpha*(u3 - u1)*s)), alpha = sqrt(a/(2*d))";
  e.p_text = "V - alpha*(U - u1)*(U - u3)";
  e.defaults = pb({{"a", "2"}, {"d", "1"}, {"u1", "0"}, {"u2", "1/4"}, {"u3", "1"}});
  e.samples = {pb({{"a", "2"}, {"d", "1"}, {"u1", "0"}, {"u2", "1/4"}, {"u3", "1"}}),
               pb({{"a", "1"}, {"d", "1"}, {"u1", "0"}, {"u2", "1/2"}, {"u3", "1"}}),
               pb({{"a", "2"}, {"d", "2"}, {"u1", "-1"}, {"u2", "0"}, {"u3", "1"}}),
               pb({{"a", "8"}, {"d", "1"}, {"u1", "0"}, {"u2", "1/3"}, {"u3", "1/2"}}),
               pb({{"a", "1"}, {"d", "2"}, {"u1", "1/2"}, {"u2", "1"}, {"u3", "2"}})};
  e.build = [](const ParamBinding& b) {
    const QuadExt a = get(b, "a"), d = get(b, "d"), u1 = get(b, "u1"), u2 = get(b, "u2"), u3 = get(b, "u3");
    const QuadExt alpha = *sqrt_number(a / (QuadExt(2) * d)).exact;
    // sqrt(ad/2) = d * alpha.
    const QuadExt c = d * alpha * (u1 - QuadExt(2) * u2 + u3);
    const LogisticFamily fam = solve_logistic(Number(alpha), Number(u1), Number(u3));
    TravelingWave w;
    w.symbols = wave_symbols();
    const MultiPoly U = MultiPoly::variable(w.symbols.registry, w.symbols.U);
    w.p = MultiPoly::variable(w.symbols.registry, w.symbols.V) -
          ((U - MultiPoly(u1)) * (U - MultiPoly(u3))).scaled(alpha);
    w.profile = fam.profile;
    w.speed = c;
    w.a = fam.a;
    w.b = fam.b;
    w.source = "catalog";
    if (fam.rate.exact) w.exp_rate = *fam.rate.exact;
    return w;
  };
  e.pde_for = [pde = e.pde](const ParamBinding&) { return pde; };
  return e;
}

CatalogEntry power_logistic() {
  CatalogEntry e;
  e.name = "power-logistic";
  e.pde = "u_t = u^(q+1)*(1 - u^q) + u_xx";
  e.params = {{"q", "positive integer",
               [](const QuadExt& v) { return v.is_rational() && v.rational_part().is_integer() && v.sign() > 0; }}};
  e.profile_text = "(1 + k*exp(q/sqrt(q+1)*s))^(-1/q)";
  e.p_text = "V - U*(U^q - 1)/sqrt(q+1)";
  e.defaults = pb({{"q", "1"}});
  e.samples = {pb({{"q", "1"}}), pb({{"q", "2"}}), pb({{"q", "3"}}), pb({{"q", "4"}}), pb({{"q", "5"}})};
  e.build = [](const ParamBinding& b) {
    const unsigned q = static_cast<unsigned>(get(b, "q").rational_part().num().get_ui());
    const QuadExt kappa = QuadExt::sqrt_of(q + 1).inverse();
    const LogisticFamily fam = solve_power_logistic(q, Number(kappa));
    TravelingWave w;
    w.symbols = wave_symbols();
    const MultiPoly U = MultiPoly::variable(w.symbols.registry, w.symbols.U);
    w.p = MultiPoly::variable(w.symbols.registry, w.symbols.V) - (U * (U.pow(q) - MultiPoly(1))).scaled(kappa);
    w.profile = fam.profile;
    w.speed = kappa;
    w.a = fam.a;
    w.b = fam.b;
    w.source = "catalog";
    if (q == 1) w.exp_rate = *fam.rate.exact;
    return w;
  };
  e.pde_for = [](const ParamBinding& b) {
    const auto q = get(b, "q").rational_part().num().get_ui();
    return "u_t = u^" + std::to_string(q + 1) + "*(1 - u^" + std::to_string(q) + ") + u_xx";
  };
  return e;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out{burgers(), kdv(), boussinesq(), imbq(), fisher(), nagumo(), power_logistic()};
    for (auto& e : out) {
      if (!e.pde_for) e.pde_for = [pde = e.pde](const ParamBinding& b) { return same_pde(pde, b); };
    }
    return out;
  }();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  throw DomainError("unknown catalog entry '" + name + "'");
}

ParamBinding resolve_params(const CatalogEntry& entry, const ParamBinding& overrides) {
  ParamBinding out = entry.defaults;
  for (const auto& [name, value] : overrides) {
    const auto spec = std::find_if(entry.params.begin(), entry.params.end(),
                                   [&](const ParamSpec& p) { return p.name == name; });
    if (spec == entry.params.end()) throw DomainError("entry '" + entry.name + "' has no parameter '" + name + "'");
    if (!spec->admissible(value)) {
      throw DomainError("parameter " + name + " = " + value.to_string() + " outside range " + spec->range);
    }
    out[name] = value;
  }
  return out;
}

}  // namespace dw
