#include "dw/reduction.hpp"

#include <cmath>

#include "dw/error.hpp"
#include "dw/poly_parse.hpp"
#include "dw/resultant.hpp"
#include "dw/roots.hpp"

namespace dw {

namespace {

std::string y_name(unsigned k) { return "y" + std::to_string(k); }

bool depends_on_any(const MultiPoly& p, const std::vector<VarId>& vars) {
  return std::any_of(vars.begin(), vars.end(), [&](VarId v) { return p.depends_on(v); });
}

MultiPoly to_registry(const MultiPoly& p, const RegistryPtr& target) { return substitute(p, {}, target); }

void fold_denominator(ODESystemSpec& sys) {
  if (sys.numerator.is_zero()) {
    sys.denominator = MultiPoly(1).with_registry(sys.registry);
    return;
  }
  if (!sys.denominator.is_constant()) return;
  const QuadExt d = sys.denominator.constant_term();
  if (d.is_zero()) throw DomainError("coefficient of the top derivative vanishes at this speed");
  sys.numerator = sys.numerator.scaled(d.inverse());
  sys.denominator = MultiPoly(1).with_registry(sys.registry);
}

}  // namespace

MultiPoly ODESystemSpec::G() const {
  if (!is_polynomial()) {
    throw DomainError("right-hand side is rational: top-derivative coefficient " + denominator.to_string() +
                      " is not constant (bind parameters first)");
  }
  return numerator.scaled(denominator.constant_term().inverse());
}

std::vector<MultiPoly> ODESystemSpec::rhs() const {
  std::vector<MultiPoly> out;
  for (unsigned k = 1; k < n; ++k) out.push_back(MultiPoly::variable(registry, state[k]));
  out.push_back(G());
  return out;
}

ODESystemSpec travelling_wave_reduce(const PDESpec& spec, const std::optional<QuadExt>& speed) {
  const unsigned n = spec.order;
  if (n == 0) throw DomainError("not reducible to an ODE: the equation has no derivatives");

  auto work = VarRegistry::create();
  std::vector<MultiPoly> Y;
  for (unsigned k = 1; k <= n; ++k) Y.push_back(MultiPoly::variable(work, y_name(k)));
  const VarId w = work->intern("__top");
  Y.push_back(MultiPoly::variable(work, w));
  const MultiPoly c = speed ? MultiPoly(*speed).with_registry(work) : MultiPoly::variable(work, "c");

  std::map<VarId, MultiPoly> bindings;
  for (const auto& [id, s] : spec.derivatives) {
    bindings[id] = (-c).pow(s.t_order) * Y[s.order()];
  }
  const MultiPoly reduced = substitute(spec.E, bindings, work);
  std::vector<VarId> work_state;
  for (unsigned k = 1; k <= n; ++k) work_state.push_back(*work->find(y_name(k)));

  const auto coeffs = as_univariate(reduced, w);
  if (coeffs.size() < 2) throw DomainError("not reducible to form (3): U^(" + std::to_string(n) + ") is absent");
  if (coeffs.size() > 2) throw DomainError("not reducible to form (3): U^(" + std::to_string(n) + ") is nonlinear");
  const MultiPoly& A = coeffs[1];
  const MultiPoly& B = coeffs[0];
  if (depends_on_any(A, work_state)) {
    throw DomainError("not reducible to form (3): coefficient of U^(" + std::to_string(n) +
                      ") depends on lower derivatives");
  }

  ODESystemSpec sys;
  sys.n = n;
  sys.registry = VarRegistry::create();
  for (unsigned k = 1; k <= n; ++k) sys.state.push_back(sys.registry->intern(y_name(k)));
  if (speed) {
    sys.speed = *speed;
  } else {
    sys.speed_var = sys.registry->intern("c");
  }
  for (const auto& p : spec.free_parameters()) sys.registry->intern(p);
  sys.numerator = to_registry(-B, sys.registry);
  sys.denominator = to_registry(A, sys.registry);

  if (!A.is_constant()) {
    const auto vars = A.variables();
    const auto cw = work->find("c");
    if (!speed && vars.size() == 1 && vars[0] == *cw) {
      const auto roots = real_roots([&] {
        std::vector<QuadExt> cs;
        for (const auto& a : as_univariate(A, *cw)) cs.push_back(a.constant_term());
        return cs;
      }(), A.radicand());
      for (const auto& r : roots) sys.exceptional_speeds.push_back(r.value);
      sys.notes.push_back("top-derivative coefficient " + sys.denominator.to_string() +
                          " vanishes at the exceptional speeds");
    } else {
      sys.notes.push_back("top-derivative coefficient " + sys.denominator.to_string() + " depends on parameters");
    }
  }
  fold_denominator(sys);
  return sys;
}

ODESystemSpec bind_system(const ODESystemSpec& sys, const ParamBinding& binding) {
  ODESystemSpec out = sys;
  std::map<VarId, MultiPoly> subs;
  for (const auto& [name, value] : binding) {
    auto id = sys.registry->find(name);
    if (!id || std::find(sys.state.begin(), sys.state.end(), *id) != sys.state.end()) {
      throw DomainError("unknown parameter '" + name + "'");
    }
    subs[*id] = MultiPoly(value);
    if (sys.speed_var && *id == *sys.speed_var) {
      out.speed = value;
      out.speed_var.reset();
    }
  }
  out.numerator = substitute(sys.numerator, subs, sys.registry);
  out.denominator = substitute(sys.denominator, subs, sys.registry);
  if (out.denominator.is_zero()) throw DomainError("coefficient of the top derivative vanishes identically");
  fold_denominator(out);
  return out;
}

Equilibrium Equilibrium::exact_point(std::vector<QuadExt> coordinates) {
  Equilibrium e;
  e.exact = true;
  for (const auto& q : coordinates) e.coords.push_back(q.to_double());
  e.exact_coords = std::move(coordinates);
  return e;
}

std::vector<Equilibrium> equilibria(const ODESystemSpec& sys, Radicand d) {
  std::map<VarId, MultiPoly> zero;
  for (unsigned k = 1; k < sys.n; ++k) zero[sys.state[k]] = MultiPoly(0);
  const MultiPoly g = substitute(sys.numerator, zero, sys.registry);
  for (VarId v : g.variables()) {
    if (v != sys.state[0]) {
      throw DomainError("equilibria need bound values for '" + sys.registry->name(v) + "'");
    }
  }
  if (g.is_zero()) throw DomainError("equilibrium continuum: G(y1, 0, ..., 0) vanishes identically");
  std::vector<QuadExt> coeffs;
  for (const auto& c : as_univariate(g, sys.state[0])) coeffs.push_back(c.constant_term());
  const Radicand field = join_radicand(d, g.radicand());

  std::vector<Equilibrium> out;
  for (const auto& root : real_roots(coeffs, field)) {
    Equilibrium e;
    if (root.exact) {
      std::vector<QuadExt> pt(sys.n);
      pt[0] = root.exact_value;
      e = Equilibrium::exact_point(pt);
    } else {
      e.coords.assign(sys.n, 0.0);
      e.coords[0] = root.value;
      e.residual = root.residual;
    }
    e.multiplicity = root.multiplicity;
    out.push_back(std::move(e));
  }
  return out;
}

Radicand PlanarSystem::radicand() const { return join_radicand(P.radicand(), Q.radicand()); }

PlanarSystem PlanarSystem::make(const std::string& p_text, const std::string& q_text) {
  PlanarSystem sys;
  sys.registry = VarRegistry::create();
  sys.x = sys.registry->intern("x");
  sys.y = sys.registry->intern("y");
  sys.P = parse_poly(p_text, sys.registry);
  sys.Q = parse_poly(q_text, sys.registry);
  if (sys.registry->size() != 2) throw DomainError("planar system may only use the variables x and y");
  return sys;
}

PlanarSystem to_planar(const ODESystemSpec& sys) {
  if (sys.n != 2) throw DomainError("to_planar needs a second-order reduction (n = " + std::to_string(sys.n) + ")");
  const MultiPoly g = sys.G();
  for (VarId v : g.variables()) {
    if (v != sys.state[0] && v != sys.state[1]) {
      throw DomainError("planar system needs bound values for '" + sys.registry->name(v) + "'");
    }
  }
  PlanarSystem out;
  out.registry = VarRegistry::create();
  out.x = out.registry->intern("x");
  out.y = out.registry->intern("y");
  const std::map<VarId, MultiPoly> rename{{sys.state[0], MultiPoly::variable(out.registry, out.x)},
                                          {sys.state[1], MultiPoly::variable(out.registry, out.y)}};
  out.P = MultiPoly::variable(out.registry, out.y);
  out.Q = substitute(g, rename, out.registry);
  return out;
}

namespace {

std::array<std::array<MultiPoly, 2>, 2> jacobian_polys(const PlanarSystem& sys) {
  return {{{partial_derivative(sys.P, sys.x), partial_derivative(sys.P, sys.y)},
           {partial_derivative(sys.Q, sys.x), partial_derivative(sys.Q, sys.y)}}};
}

std::array<double, 2> eigenvector(const std::array<std::array<double, 2>, 2>& J, double lambda) {
  std::array<double, 2> v;
  const double scale = std::abs(J[0][0]) + std::abs(J[0][1]) + std::abs(J[1][0]) + std::abs(J[1][1]) + 1.0;
  if (std::abs(J[0][1]) > 1e-14 * scale) {
    v = {J[0][1], lambda - J[0][0]};
  } else if (std::abs(J[1][0]) > 1e-14 * scale) {
    v = {lambda - J[1][1], J[1][0]};
  } else if (std::abs(lambda - J[0][0]) <= std::abs(lambda - J[1][1])) {
    v = {1.0, 0.0};
  } else {
    v = {0.0, 1.0};
  }
  const double norm = std::hypot(v[0], v[1]);
  return {v[0] / norm, v[1] / norm};
}

}  // namespace

EigenData jacobian_eigen(const PlanarSystem& sys, const Equilibrium& eq, Radicand d) {
  if (eq.coords.size() != 2) throw DomainError("jacobian_eigen needs a planar equilibrium");
  const auto Jp = jacobian_polys(sys);
  EigenData out;
  double tr = 0.0, det = 0.0;
  if (eq.exact) {
    const std::map<VarId, QuadExt> point{{sys.x, eq.exact_coords[0]}, {sys.y, eq.exact_coords[1]}};
    std::array<std::array<QuadExt, 2>, 2> J;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        J[i][j] = evaluate(Jp[i][j], point);
        out.jacobian[i][j] = J[i][j].to_double();
      }
    }
    out.trace = J[0][0] + J[1][1];
    out.determinant = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    const QuadExt disc = out.trace * out.trace - QuadExt(4) * out.determinant;
    out.real = disc.sign() >= 0;
    out.saddle = out.determinant.sign() < 0;
    out.hyperbolic = !out.determinant.is_zero() && (out.real || !out.trace.is_zero());
    if (out.real && disc.is_rational()) {
      Radicand field = d;
      try {
        field = join_radicand(join_radicand(d, out.trace.radicand()), out.determinant.radicand());
      } catch (const RadicandMismatch&) {
        field = 0;
      }
      if (field != 0) {
        if (auto s = try_sqrt(disc.rational_part(), field)) {
          const QuadExt root = s->abs();
          out.exact = true;
          out.lambda_minus = (out.trace - root) / QuadExt(2);
          out.lambda_plus = (out.trace + root) / QuadExt(2);
        }
      }
    }
    tr = out.trace.to_double();
    det = out.determinant.to_double();
  } else {
    const std::map<VarId, double> point{{sys.x, eq.coords[0]}, {sys.y, eq.coords[1]}};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) out.jacobian[i][j] = evaluate_float(Jp[i][j], point);
    }
    tr = out.jacobian[0][0] + out.jacobian[1][1];
    det = out.jacobian[0][0] * out.jacobian[1][1] - out.jacobian[0][1] * out.jacobian[1][0];
    const double disc = tr * tr - 4.0 * det;
    constexpr double tiny = 1e-12;
    out.real = disc >= -tiny;
    out.saddle = det < -tiny;
    out.hyperbolic = std::abs(det) > tiny && (out.real || std::abs(tr) > tiny);
  }
  if (!out.hyperbolic) {
    out.note = "non-hyperbolic equilibrium: no eigen decomposition claimed";
    out.exact = false;
    return out;
  }
  if (!out.real) {
    out.note = "complex eigenvalues (focus)";
    out.lambda_minus_value = out.lambda_plus_value = tr / 2.0;
    return out;
  }
  if (out.exact) {
    out.lambda_minus_value = out.lambda_minus.to_double();
    out.lambda_plus_value = out.lambda_plus.to_double();
  } else {
    const double s = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    out.lambda_minus_value = (tr - s) / 2.0;
    out.lambda_plus_value = (tr + s) / 2.0;
  }
  out.v_minus = eigenvector(out.jacobian, out.lambda_minus_value);
  out.v_plus = eigenvector(out.jacobian, out.lambda_plus_value);
  out.note = out.saddle ? "hyperbolic saddle" : "hyperbolic node";
  return out;
}

std::optional<Radicand> discriminant_radicand(const PlanarSystem& sys, const Equilibrium& eq) {
  if (!eq.exact || eq.exact_coords.size() != 2) return std::nullopt;
  const auto Jp = jacobian_polys(sys);
  const std::map<VarId, QuadExt> point{{sys.x, eq.exact_coords[0]}, {sys.y, eq.exact_coords[1]}};
  std::array<std::array<QuadExt, 2>, 2> J;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) J[i][j] = evaluate(Jp[i][j], point);
  }
  const QuadExt tr = J[0][0] + J[1][1];
  const QuadExt disc = tr * tr - QuadExt(4) * (J[0][0] * J[1][1] - J[0][1] * J[1][0]);
  if (!disc.is_rational() || disc.sign() <= 0) return disc.is_zero() ? std::optional<Radicand>(1) : std::nullopt;
  const auto& q = disc.rational_part();
  const mpz_class free = square_free_split(q.num() * q.den()).square_free;
  if (!free.fits_slong_p()) return std::nullopt;
  return static_cast<Radicand>(free.get_si());
}

// ---------------------------------------------------------------- affine maps

AffineMap AffineMap::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw ParseError("coordinate change must have the form \"<expr in x,y>,<expr in x,y>\"", 1, 1);
  }
  auto reg = VarRegistry::create();
  const VarId x = reg->intern("x");
  const VarId y = reg->intern("y");
  IdentifierHandler handler = [&](const std::string& name, std::size_t line, std::size_t column) {
    if (name != "x" && name != "y") throw ParseError("coordinate change may only use x and y", line, column);
    return MultiPoly::variable(reg, name);
  };
  AffineMap map;
  const std::string_view parts[2] = {text.substr(0, comma), text.substr(comma + 1)};
  for (int i = 0; i < 2; ++i) {
    const MultiPoly e = parse_expression(parts[i], handler).with_registry(reg);
    if (e.total_degree() > 1) throw ParseError("coordinate change must be affine", 1, 1);
    map.A[i][0] = e.coefficient(Monomial::var(x));
    map.A[i][1] = e.coefficient(Monomial::var(y));
    map.b[i] = e.constant_term();
  }
  if (map.det().is_zero()) throw DomainError("singular coordinate change");
  return map;
}

AffineMap AffineMap::inverse() const {
  const QuadExt det = this->det();
  if (det.is_zero()) throw DomainError("singular coordinate change");
  const QuadExt inv = det.inverse();
  AffineMap out;
  out.A = {{{A[1][1] * inv, -A[0][1] * inv}, {-A[1][0] * inv, A[0][0] * inv}}};
  for (int i = 0; i < 2; ++i) out.b[i] = -(out.A[i][0] * b[0] + out.A[i][1] * b[1]);
  return out;
}

AffineMap AffineMap::then(const AffineMap& next) const {
  AffineMap out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.A[i][j] = next.A[i][0] * A[0][j] + next.A[i][1] * A[1][j];
    out.b[i] = next.A[i][0] * b[0] + next.A[i][1] * b[1] + next.b[i];
  }
  return out;
}

std::array<QuadExt, 2> AffineMap::apply(const std::array<QuadExt, 2>& p) const {
  return {A[0][0] * p[0] + A[0][1] * p[1] + b[0], A[1][0] * p[0] + A[1][1] * p[1] + b[1]};
}

std::string AffineMap::to_string() const {
  auto reg = VarRegistry::create();
  const MultiPoly x = MultiPoly::variable(reg, "x");
  const MultiPoly y = MultiPoly::variable(reg, "y");
  std::string out;
  for (int i = 0; i < 2; ++i) {
    const MultiPoly row = x.scaled(A[i][0]) + y.scaled(A[i][1]) + MultiPoly(b[i]);
    out += (i ? "," : "") + row.to_string();
  }
  return out;
}

namespace {

std::map<VarId, MultiPoly> affine_bindings(const PlanarSystem& sys, const AffineMap& m) {
  const MultiPoly x = MultiPoly::variable(sys.registry, sys.x);
  const MultiPoly y = MultiPoly::variable(sys.registry, sys.y);
  return {{sys.x, x.scaled(m.A[0][0]) + y.scaled(m.A[0][1]) + MultiPoly(m.b[0])},
          {sys.y, x.scaled(m.A[1][0]) + y.scaled(m.A[1][1]) + MultiPoly(m.b[1])}};
}

}  // namespace

PlanarSystem change_coordinates(const PlanarSystem& sys, const AffineMap& map) {
  const auto old_of_new = affine_bindings(sys, map.inverse());
  const MultiPoly P_old = substitute(sys.P, old_of_new, sys.registry);
  const MultiPoly Q_old = substitute(sys.Q, old_of_new, sys.registry);
  PlanarSystem out = sys;
  out.P = (P_old.scaled(map.A[0][0]) + Q_old.scaled(map.A[0][1])).with_registry(sys.registry);
  out.Q = (P_old.scaled(map.A[1][0]) + Q_old.scaled(map.A[1][1])).with_registry(sys.registry);
  return out;
}

Equilibrium map_point(const AffineMap& map, const Equilibrium& eq) {
  Equilibrium out = eq;
  if (eq.exact) {
    const auto p = map.apply({eq.exact_coords[0], eq.exact_coords[1]});
    out.exact_coords = {p[0], p[1]};
    out.coords = {p[0].to_double(), p[1].to_double()};
  } else {
    for (int i = 0; i < 2; ++i) {
      out.coords[i] = map.A[i][0].to_double() * eq.coords[0] + map.A[i][1].to_double() * eq.coords[1] +
                      map.b[i].to_double();
    }
  }
  return out;
}

MultiPoly pull_back(const MultiPoly& f, const PlanarSystem& sys, const AffineMap& map) {
  return substitute(f, affine_bindings(sys, map), sys.registry);
}

// ---------------------------------------------------------------- resultant chain

MultiPoly resultant_chain_reduce(const std::vector<MultiPoly>& hypersurfaces, const std::vector<VarId>& state) {
  if (state.size() < 2) throw DomainError("resultant chain needs at least two state variables");
  if (hypersurfaces.size() + 1 != state.size()) {
    throw DomainError("resultant chain needs n-1 = " + std::to_string(state.size() - 1) + " hypersurfaces");
  }
  std::vector<MultiPoly> current = hypersurfaces;
  for (std::size_t idx = state.size(); idx-- > 2;) {
    const VarId v = state[idx];
    std::vector<MultiPoly> with, without;
    for (const auto& p : current) (p.depends_on(v) ? with : without).push_back(p);
    for (std::size_t i = 1; i < with.size(); ++i) {
      MultiPoly r = sylvester_resultant(with[0], with[i], v);
      if (r.is_zero()) {
        throw CommonComponent("resultant vanishes identically while eliminating y" + std::to_string(idx + 1) +
                              ": the hypersurfaces share a common component");
      }
      without.push_back(std::move(r));
    }
    current = std::move(without);
  }
  if (current.empty()) throw DomainError("resultant chain left no relation in (y1, y2)");
  return current.front();
}

}  // namespace dw
