#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "dw/error.hpp"
#include "dw/json_io.hpp"
#include "dw/poly_parse.hpp"

namespace dw::cli {

namespace {

struct Common {
  std::string pde;
  std::string pde_file;
  std::vector<std::string> params;
  std::string speed;
  Radicand radicand = 0;  // 0: automatic
  unsigned max_degree = 4;
  bool json = false;
  bool text = false;
  std::string out_file;
};

struct Options {
  Common common;
  // find-curve
  std::string weights = "1,1";
  std::string map;
  // certify-fisher
  unsigned m_min = 1, m_max = 100, gamma_m_max = 10, recurrence_m_max = 20;
  // verify
  std::string entry;
  double s_min = -10.0, s_max = 10.0;
  std::size_t samples = 201;
  std::optional<double> tolerance;
  // p-from-exp
  std::string q1, q2, lambda;
  // shoot
  ShootingConfig shooting;
  std::string method = "rkf45";
  std::string from, to, direction;
  std::string curve, curve_map;
  double curve_tol = 1e-5;
  std::string csv;
  bool with_samples = false;
};

struct Report {
  Json result;
  std::string text;
  int code = kExitOk;
};

// "2.5", "-1e-3": the exact rational with that decimal expansion.
std::optional<Rat> parse_decimal(const std::string& text) {
  static const std::regex re(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re) || (m[2].str().empty() && m[3].str().empty())) return std::nullopt;
  const std::string digits = m[2].str() + m[3].str();
  long exponent = m[4].matched ? std::stol(m[4].str()) : 0;
  exponent -= static_cast<long>(m[3].str().size());
  if (std::abs(exponent) > 400) return std::nullopt;
  mpz_class num(digits.empty() ? "0" : digits), den = 1;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exponent)));
  if (exponent >= 0) num *= ten_pow; else den = ten_pow;
  if (m[1].str() == "-") num = -num;
  return Rat(num, den);
}

QuadExt exact_value(const std::string& text, const std::string& what, bool allow_decimal) {
  try {
    return parse_constant(text);
  } catch (const ParseError& e) {
    if (allow_decimal) {
      if (auto r = parse_decimal(text)) return QuadExt(*r);
    }
    throw DomainError(what + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

ParamBinding parse_params(const std::vector<std::string>& items) {
  ParamBinding b;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("--param expects NAME=VALUE, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    if (b.count(name)) throw DomainError("parameter '" + name + "' given twice");
    b[name] = exact_value(item.substr(eq + 1), "--param " + name, false);
  }
  return b;
}

Json binding_json(const ParamBinding& b) {
  Json out = Json::object();
  for (const auto& [k, v] : b) out[k] = v.to_string();
  return out;
}

std::string pde_text(const Common& c) {
  if (!c.pde.empty() && !c.pde_file.empty()) throw DomainError("give either --pde or --pde-file");
  if (!c.pde_file.empty()) {
    std::ifstream in(c.pde_file);
    if (!in) throw DomainError("cannot read " + c.pde_file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    return text;
  }
  if (c.pde.empty()) throw DomainError("--pde is required");
  return c.pde;
}

struct Loaded {
  std::string text;
  ParamBinding params;
  PDESpec spec;
};

Loaded load_pde(const Common& c) {
  Loaded l;
  l.text = pde_text(c);
  l.params = parse_params(c.params);
  l.spec = bind_params(parse_pde(l.text), l.params);
  return l;
}

Json base_config(const std::string& command, const Loaded* l) {
  Json cfg{{"command", command}};
  if (l) {
    cfg["pde"] = l->text;
    cfg["params"] = binding_json(l->params);
  }
  return cfg;
}

std::array<QuadExt, 2> parse_point(const std::string& text, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw DomainError(what + " expects two comma-separated coordinates");
  return {exact_value(parts[0], what, false), exact_value(parts[1], what, false)};
}

Grading parse_weights(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw DomainError("--weights expects WX,WY");
  Grading g;
  try {
    g.wx = static_cast<unsigned>(std::stoul(parts[0]));
    g.wy = static_cast<unsigned>(std::stoul(parts[1]));
  } catch (const std::exception&) {
    throw DomainError("--weights expects positive integers");
  }
  if (g.wx == 0 || g.wy == 0) throw DomainError("--weights expects positive integers");
  return g;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

// ------------------------------------------------------------------ commands

Report cmd_reduce(const Options& o) {
  const Loaded l = load_pde(o.common);
  std::optional<QuadExt> speed;
  if (!o.common.speed.empty()) speed = exact_value(o.common.speed, "--speed", false);
  const ODESystemSpec sys = travelling_wave_reduce(l.spec, speed);
  Report r;
  Json cfg = base_config("reduce", &l);
  cfg["speed"] = speed ? Json(speed->to_string()) : Json("symbolic");
  r.result["config"] = cfg;
  r.result["pde_normal_form"] = l.spec.to_string();
  r.result["order"] = l.spec.order;
  r.result["system"] = to_json(sys);
  std::ostringstream t;
  t << "PDE: " << l.spec.to_string() << "\norder: " << sys.n << "\n";
  if (sys.is_polynomial()) {
    const auto rhs = sys.rhs();
    for (unsigned k = 0; k < sys.n; ++k) t << sys.registry->name(sys.state[k]) << "' = " << rhs[k].to_string() << "\n";
  } else {
    t << sys.registry->name(sys.state.back()) << "' = (" << sys.numerator.to_string() << ") / ("
      << sys.denominator.to_string() << ")\n";
  }
  if (!sys.exceptional_speeds.empty()) {
    t << "exceptional speeds:";
    for (double c : sys.exceptional_speeds) t << ' ' << fmt(c);
    t << "\n";
  }
  for (const auto& n : sys.notes) t << "note: " << n << "\n";
  if (sys.n == 2 && sys.speed && sys.is_polynomial() && l.spec.free_parameters().empty()) {
    const PlanarSystem p = to_planar(sys);
    r.result["planar"] = to_json(p);
    t << "planar: x' = " << p.P.to_string() << ", y' = " << p.Q.to_string() << "\n";
  }
  r.text = t.str();
  return r;
}

Radicand auto_radicand(Radicand requested, const QuadExt& speed) {
  if (requested < 0) throw DomainError("--radicand must be a positive square-free integer");
  if (requested > 0) {
    if (speed.radicand() != 1 && speed.radicand() != requested) {
      throw RadicandMismatch(speed.radicand(), requested);
    }
    return requested;
  }
  return speed.radicand();
}

Report cmd_equilibria(const Options& o) {
  const Loaded l = load_pde(o.common);
  if (o.common.speed.empty()) throw DomainError("--speed is required");
  const QuadExt speed = exact_value(o.common.speed, "--speed", false);
  const Radicand d = auto_radicand(o.common.radicand, speed);
  const ODESystemSpec sys = travelling_wave_reduce(l.spec, speed);
  const auto eqs = equilibria(sys, d);
  Report r;
  Json cfg = base_config("equilibria", &l);
  cfg["speed"] = speed.to_string();
  cfg["radicand"] = d;
  r.result["config"] = cfg;
  Json list = Json::array();
  std::ostringstream t;
  const bool planar = sys.n == 2 && sys.is_polynomial();
  std::optional<PlanarSystem> ps;
  if (planar) ps = to_planar(sys);
  for (const auto& e : eqs) {
    Json j = to_json(e);
    t << (e.exact ? e.exact_coords[0].to_string() : fmt(e.coords[0]));
    if (ps) {
      const Radicand ed = e.exact ? discriminant_radicand(*ps, e).value_or(d) : d;
      const EigenData eig = jacobian_eigen(*ps, e, ed == 1 ? d : ed);
      j["eigen"] = to_json(eig);
      t << ": " << (eig.saddle ? "saddle" : !eig.hyperbolic ? "non-hyperbolic" : eig.real ? "node" : "focus");
      if (eig.exact) t << ", lambda = " << eig.lambda_minus.to_string() << ", " << eig.lambda_plus.to_string();
      else if (eig.real) t << ", lambda ~ " << fmt(eig.lambda_minus_value) << ", " << fmt(eig.lambda_plus_value);
    }
    if (e.multiplicity > 1) t << " (multiplicity " << e.multiplicity << ")";
    t << "\n";
    list.push_back(j);
  }
  r.result["equilibria"] = list;
  r.text = t.str();
  return r;
}

Report cmd_find_curve(const Options& o) {
  const Loaded l = load_pde(o.common);
  if (o.common.speed.empty()) throw DomainError("--speed is required");
  if (o.common.max_degree == 0) throw DomainError("--max-degree must be at least 1");
  const QuadExt speed = exact_value(o.common.speed, "--speed", false);
  const Grading grading = parse_weights(o.weights);
  const ODESystemSpec sys = travelling_wave_reduce(l.spec, speed);
  PlanarSystem planar = to_planar(sys);
  Radicand d = auto_radicand(o.common.radicand, speed);

  std::vector<Equilibrium> found = equilibria(sys, d);
  if (d == 1 && o.common.radicand == 0) {
    // Rational data: take the field of the first saddle's eigenvalues.
    for (const auto& e : found) {
      if (!e.exact) continue;
      const auto rd = discriminant_radicand(planar, e);
      if (rd && *rd != 1 && jacobian_eigen(planar, e, *rd).saddle) {
        d = *rd;
        break;
      }
    }
    if (d != 1) found = equilibria(sys, d);
  }
  AffineMap map;
  if (!o.map.empty()) {
    map = AffineMap::parse(o.map);
    planar = change_coordinates(planar, map);
    for (auto& e : found) e = map_point(map, e);
  }
  std::vector<Equilibrium> points;
  std::vector<std::string> warnings;
  for (const auto& e : found) {
    if (e.exact) points.push_back(e);
    else warnings.push_back("equilibrium near " + fmt(e.coords[0]) + " is not exact and is not required");
  }
  const SearchReport search = search_constant_cofactor(planar, o.common.max_degree, points, d, grading);

  Report r;
  Json cfg = base_config("find-curve", &l);
  cfg["speed"] = speed.to_string();
  cfg["radicand"] = d;
  cfg["max_degree"] = o.common.max_degree;
  cfg["weights"] = Json::array({grading.wx, grading.wy});
  cfg["map"] = o.map.empty() ? Json("identity") : Json(map.to_string());
  r.result["config"] = cfg;
  r.result["system"] = to_json(planar);
  Json pts = Json::array();
  for (const auto& p : points) pts.push_back(to_json(p));
  r.result["required_points"] = pts;
  r.result["search"] = to_json(search);
  Json all_warnings = Json::array();
  for (const auto& w : warnings) all_warnings.push_back(w);
  for (const auto& w : search.warnings) all_warnings.push_back(w);
  r.result["warnings"] = all_warnings;
  r.result["found"] = !search.results.empty();

  std::ostringstream t;
  t << "system: x' = " << planar.P.to_string() << ", y' = " << planar.Q.to_string() << "\n";
  t << "radicand: " << d << ", max degree: " << o.common.max_degree << " (weights " << grading.wx << ","
    << grading.wy << ")\n";
  for (const auto& c : search.results) {
    t << "curve: " << c.f.to_string() << " = 0\n  cofactor: " << c.k.to_string() << " (" << to_string(c.source)
      << "), degree " << c.degree << "\n";
  }
  if (search.results.empty()) t << "no invariant curve found\n";
  for (const auto& w : all_warnings) t << "warning: " << w.get<std::string>() << "\n";
  r.text = t.str();
  r.code = search.results.empty() ? kExitNoCurve : kExitOk;
  return r;
}

Report cmd_certify(const Options& o) {
  CertifyOptions opts;
  opts.m_min = o.m_min;
  opts.m_max = o.m_max;
  opts.gamma_m_max = o.gamma_m_max;
  opts.recurrence_m_max = o.recurrence_m_max;
  if (o.m_min == 0 || o.m_max < o.m_min) throw DomainError("need 1 <= --m-min <= --m-max");
  if (o.common.radicand < 0) throw DomainError("--radicand must be positive");
  if (o.common.radicand > 0) opts.radicand = o.common.radicand;
  const CurveCertificate cert = certify(opts);
  Report r;
  Json cfg = base_config("certify-fisher", nullptr);
  cfg["pde"] = kFisherPde;
  cfg["m_min"] = opts.m_min;
  cfg["m_max"] = opts.m_max;
  cfg["gamma_m_max"] = opts.gamma_m_max;
  cfg["recurrence_m_max"] = opts.recurrence_m_max;
  cfg["radicand"] = opts.radicand ? Json(*opts.radicand) : Json("auto");
  r.result["config"] = cfg;
  r.result["certificate"] = to_json(cert);
  std::ostringstream t;
  for (const auto& s : cert.stages) {
    t << (s.passed ? "PASS " : "FAIL ") << s.name;
    if (!s.diagnostics.empty()) t << ": " << s.diagnostics;
    t << "\n";
  }
  if (!cert.admissible.empty()) {
    t << "c^2 = " << cert.admissible[0].c_squared.to_string() << ", c = " << cert.admissible[0].c.to_string()
      << " ~ " << fmt(cert.admissible[0].c.to_double()) << "\n";
  }
  if (cert.curve) t << "curve: " << cert.curve->f.to_string() << " = 0, cofactor " << cert.curve->k.to_string() << "\n";
  if (cert.passed) t << "p(U, U') = " << cert.p.to_string() << "\n";
  t << (cert.passed ? "certified\n" : cert.negative ? "no admissible speed in range\n" : "not certified\n");
  r.text = t.str();
  r.code = cert.passed ? kExitOk : kExitNoCurve;
  return r;
}

Report cmd_verify(const Options& o) {
  if (o.entry.empty()) throw DomainError("--entry is required");
  const CatalogEntry& e = catalog_entry(o.entry);
  const ParamBinding params = resolve_params(e, parse_params(o.common.params));
  if (!(o.s_max > o.s_min) || o.samples < 2) throw DomainError("need --s-min < --s-max and at least 2 samples");
  const TravelingWave wave = e.build(params);
  const WaveResidual res = wave_residual(wave, o.s_min, o.s_max, o.samples, o.tolerance);
  Report r;
  Json cfg{{"command", "verify"}, {"entry", e.name}, {"pde", e.pde_for(params)}, {"params", binding_json(params)},
           {"s_min", o.s_min}, {"s_max", o.s_max}, {"samples", o.samples}};
  cfg["tolerance"] = res.tolerance;
  r.result["config"] = cfg;
  r.result["wave"] = to_json(wave);
  r.result["residual"] = to_json(res);
  bool ok = res.passed;
  std::ostringstream t;
  t << e.name << ": U(s) = " << wave.profile.to_string() << "\n";
  t << "p(U, U') = " << wave.p.to_string() << "\n";
  t << "max |p| = " << fmt(res.max_abs) << " (tolerance " << fmt(res.tolerance) << ", " << res.samples << " samples)";
  if (res.identically_zero) t << ", identically zero: " << (*res.identically_zero ? "yes" : "no");
  t << "\n";
  if (wave.boundary_conditions) {
    const BoundaryCheck b = boundary_limit_check(wave.profile, wave.a, wave.b);
    r.result["boundary"] = to_json(b);
    ok = ok && b.passed;
    t << "limits: U(-40) = " << fmt(b.left) << ", U(40) = " << fmt(b.right) << (b.passed ? " ok" : " FAILED") << "\n";
  } else {
    r.result["boundary"] = nullptr;
  }
  for (const auto& n : wave.notes) t << "note: " << n << "\n";
  r.result["passed"] = ok;
  t << (ok ? "PASS\n" : "FAIL\n");
  r.text = t.str();
  r.code = ok ? kExitOk : kExitTolerance;
  return r;
}

Report cmd_catalog(const Options&) {
  Report r;
  r.result["config"] = Json{{"command", "catalog"}};
  Json list = Json::array();
  std::ostringstream t;
  for (const auto& e : catalog()) {
    list.push_back(to_json(e));
    t << e.name << ": " << e.pde << "\n  U = " << e.profile_text << "\n  p = " << e.p_text << "\n  params:";
    for (const auto& p : e.params) t << ' ' << p.name << " (" << p.range << ")";
    if (e.params.empty()) t << " none";
    t << "\n";
  }
  r.result["entries"] = list;
  r.text = t.str();
  return r;
}

Report cmd_p_from_exp(const Options& o) {
  if (o.q1.empty() || o.q2.empty() || o.lambda.empty()) throw DomainError("--q1, --q2 and --lambda are required");
  auto reg = VarRegistry::create();
  reg->intern("z");
  const MultiPoly q1 = parse_poly(o.q1, reg);
  const MultiPoly q2 = parse_poly(o.q2, reg);
  const QuadExt lambda = exact_value(o.lambda, "--lambda", false);
  const MultiPoly p = p_from_exp_rational(q1, q2, lambda);
  Report r;
  r.result["config"] = Json{{"command", "p-from-exp"}, {"q1", q1.to_string()}, {"q2", q2.to_string()},
                            {"lambda", lambda.to_string()}};
  r.result["p"] = to_json(p);
  r.text = "p(U, V) = " + p.to_string() + "   (V = U')\n";
  return r;
}

Report cmd_shoot(const Options& o) {
  const Loaded l = load_pde(o.common);
  if (o.common.speed.empty()) throw DomainError("--speed is required");
  if (o.from.empty()) throw DomainError("--from is required");
  const QuadExt speed = exact_value(o.common.speed, "--speed", true);
  const ODESystemSpec sys = travelling_wave_reduce(l.spec, speed);
  const PlanarSystem planar = to_planar(sys);
  ShootingConfig cfg = o.shooting;
  if (o.method == "rk4") cfg.method = Integrator::RK4;
  else if (o.method == "rkf45") cfg.method = Integrator::RKF45;
  else throw DomainError("--method must be rk4 or rkf45");

  const Equilibrium from = Equilibrium::exact_point({parse_point(o.from, "--from")[0], parse_point(o.from, "--from")[1]});
  std::optional<Equilibrium> target;
  if (!o.to.empty()) {
    const auto p = parse_point(o.to, "--to");
    target = Equilibrium::exact_point({p[0], p[1]});
  }
  ShootDirection dir = target ? ShootDirection::Toward : ShootDirection::Plus;
  if (o.direction == "toward") dir = ShootDirection::Toward;
  else if (o.direction == "away") dir = ShootDirection::Away;
  else if (o.direction == "plus") dir = ShootDirection::Plus;
  else if (o.direction == "minus") dir = ShootDirection::Minus;
  else if (!o.direction.empty()) throw DomainError("--direction must be toward, away, plus or minus");

  std::vector<Equilibrium> others;
  for (const auto& e : equilibria(sys, speed.radicand())) {
    if (std::abs(e.coords[0] - from.coords[0]) > 1e-12 || std::abs(e.coords[1] - from.coords[1]) > 1e-12) {
      others.push_back(e);
    }
  }
  const ShootResult shot = shoot_unstable_manifold(planar, from, dir, cfg, target, others);

  Report r;
  Json c = base_config("shoot", &l);
  c["speed"] = speed.to_string();
  c["from"] = o.from;
  c["to"] = o.to.empty() ? Json(nullptr) : Json(o.to);
  c["direction"] = o.direction.empty() ? Json(target ? "toward" : "plus") : Json(o.direction);
  c["shooting"] = to_json(cfg);
  r.result["config"] = c;
  r.result["shoot"] = to_json(shot, o.with_samples);
  bool ok = !target || shot.converged;
  std::ostringstream t;
  t << "orbit: " << to_string(shot.orbit.status) << ", " << shot.orbit.accepted << " steps, s_end = "
    << fmt(shot.orbit.s.back()) << "\n";
  t << "terminal state: (" << fmt(shot.orbit.terminal()[0]) << ", " << fmt(shot.orbit.terminal()[1]) << ")\n";
  if (target) t << "distance to target: " << fmt(shot.target->terminal) << (shot.converged ? " (converged)" : " (not converged)") << "\n";
  if (!o.curve.empty()) {
    c["curve"] = o.curve;
    c["curve_map"] = o.curve_map.empty() ? Json("identity") : Json(o.curve_map);
    c["curve_tol"] = o.curve_tol;
    r.result["config"] = c;
    MultiPoly f = parse_poly(o.curve, planar.registry);
    if (!o.curve_map.empty()) f = pull_back(f, planar, AffineMap::parse(o.curve_map));
    const OrbitResidual res = curve_residual_along_orbit(f, {planar.x, planar.y}, shot.orbit);
    r.result["curve_residual"] = Json{{"max_abs", number_or_null(res.max_abs)},
                                      {"mean_abs", number_or_null(res.mean_abs)},
                                      {"s_max", res.s_max},
                                      {"within_tolerance", res.max_abs < o.curve_tol}};
    ok = ok && res.max_abs < o.curve_tol;
    t << "curve residual: max " << fmt(res.max_abs) << ", mean " << fmt(res.mean_abs) << "\n";
  }
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw DomainError("cannot write " + o.csv);
    write_csv(shot.orbit, {"y1", "y2"}, f);
  }
  r.result["passed"] = ok;
  t << (ok ? "PASS\n" : "FAIL\n");
  r.text = t.str();
  r.code = ok ? kExitOk : kExitTolerance;
  return r;
}

void add_common(CLI::App* sub, Common& c, bool pde, bool speed) {
  if (pde) {
    sub->add_option("--pde", c.pde, "PDE text, e.g. \"u_t = u_xx + u*(1-u)\"");
    sub->add_option("--pde-file", c.pde_file, "file holding the PDE text");
    sub->add_option("--param", c.params, "NAME=VALUE (repeatable)");
  }
  if (speed) sub->add_option("--speed", c.speed, "wave speed, e.g. 5/6*sqrt(6)");
  sub->add_flag("--json", c.json, "JSON output (default)");
  sub->add_flag("--text", c.text, "human-readable output");
  sub->add_option("--out", c.out_file, "write the report to FILE");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Darboux curves and algebraic traveling waves", "dwave"};
  app.require_subcommand(1);
  Options o;
  Common& c = o.common;

  auto* reduce = app.add_subcommand("reduce", "traveling-wave reduction of a PDE");
  add_common(reduce, c, true, true);

  auto* eq = app.add_subcommand("equilibria", "equilibria and their eigenvalues");
  add_common(eq, c, true, true);
  eq->add_option("--radicand", c.radicand, "square-free d of Q(sqrt(d)); default from the speed");

  auto* find = app.add_subcommand("find-curve", "constant-cofactor Darboux search on the reduced system");
  add_common(find, c, true, true);
  find->add_option("--radicand", c.radicand, "square-free d; default from the speed or the saddle eigenvalues");
  find->add_option("--max-degree", c.max_degree, "largest graded degree searched")->capture_default_str();
  find->add_option("--weights", o.weights, "grading WX,WY")->capture_default_str();
  find->add_option("--map", o.map, "affine change of coordinates, e.g. \"1-x,y\"");

  auto* cert = app.add_subcommand("certify-fisher", "five-stage certificate for the Fisher equation");
  add_common(cert, c, false, false);
  cert->add_option("--radicand", c.radicand, "field for the curve search; default from the speed");
  cert->add_option("--m-min", o.m_min)->capture_default_str();
  cert->add_option("--m-max", o.m_max)->capture_default_str();
  cert->add_option("--gamma-m-max", o.gamma_m_max)->capture_default_str();
  cert->add_option("--recurrence-m-max", o.recurrence_m_max)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "residual report for a catalog entry");
  add_common(verify, c, false, false);
  verify->add_option("--entry", o.entry, "catalog entry name")->required();
  verify->add_option("--param", c.params, "NAME=VALUE (repeatable)");
  verify->add_option("--s-min", o.s_min)->capture_default_str();
  verify->add_option("--s-max", o.s_max)->capture_default_str();
  verify->add_option("--samples", o.samples)->capture_default_str();
  verify->add_option("--tolerance", o.tolerance, "default 1e-8 (1e-6 for difference derivatives)");

  auto* cat = app.add_subcommand("catalog", "list catalog entries");
  add_common(cat, c, false, false);

  auto* pexp = app.add_subcommand("p-from-exp", "p(U, U') for U = q1(z)/q2(z), z = exp(lambda s)");
  add_common(pexp, c, false, false);
  pexp->add_option("--q1", o.q1)->required();
  pexp->add_option("--q2", o.q2)->required();
  pexp->add_option("--lambda", o.lambda)->required();

  auto* shoot = app.add_subcommand("shoot", "integrate the unstable manifold of a saddle");
  add_common(shoot, c, true, true);
  shoot->add_option("--from", o.from, "saddle \"X,Y\"")->required();
  shoot->add_option("--to", o.to, "target equilibrium \"X,Y\"");
  shoot->add_option("--direction", o.direction, "toward | away | plus | minus");
  shoot->add_option("--epsilon", o.shooting.epsilon)->capture_default_str();
  shoot->add_option("--horizon", o.shooting.horizon)->capture_default_str();
  shoot->add_option("--method", o.method, "rkf45 | rk4")->capture_default_str();
  shoot->add_option("--atol", o.shooting.atol)->capture_default_str();
  shoot->add_option("--rtol", o.shooting.rtol)->capture_default_str();
  shoot->add_option("--step", o.shooting.h, "RK4 step, RKF45 initial step")->capture_default_str();
  shoot->add_option("--tolerance", o.shooting.tolerance, "convergence distance")->capture_default_str();
  shoot->add_option("--curve", o.curve, "polynomial in x, y to monitor along the orbit");
  shoot->add_option("--curve-map", o.curve_map, "coordinates of --curve, e.g. \"1-x,y\"");
  shoot->add_option("--curve-tol", o.curve_tol)->capture_default_str();
  shoot->add_option("--csv", o.csv, "write orbit samples to FILE");
  shoot->add_flag("--samples", o.with_samples, "include orbit samples in the JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (c.json && c.text) {
    err << "error: --json and --text are exclusive\n";
    return kExitUsage;
  }

  Report report;
  std::string command;
  try {
    CLI::App* sub = app.get_subcommands().front();
    command = sub->get_name();
    if (command == "reduce") report = cmd_reduce(o);
    else if (command == "equilibria") report = cmd_equilibria(o);
    else if (command == "find-curve") report = cmd_find_curve(o);
    else if (command == "certify-fisher") report = cmd_certify(o);
    else if (command == "verify") report = cmd_verify(o);
    else if (command == "catalog") report = cmd_catalog(o);
    else if (command == "p-from-exp") report = cmd_p_from_exp(o);
    else report = cmd_shoot(o);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string body;
  if (c.text) {
    body = report.text;
  } else {
    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = command;
    for (auto& [k, v] : report.result.items()) doc[k] = v;
    doc["exit_code"] = report.code;
    body = doc.dump(2) + "\n";
  }
  if (!c.out_file.empty()) {
    std::ofstream f(c.out_file);
    if (!f) {
      err << "error: cannot write " << c.out_file << "\n";
      return kExitUsage;
    }
    f << body;
  } else {
    out << body;
  }
  return report.code;
}

}  // namespace dw::cli
