#include "dw/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "dw/error.hpp"

namespace dw {

namespace {

std::vector<double> axpy(const std::vector<double>& y, double h, std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
  std::vector<double> out = y;
  for (const auto& [w, k] : terms) {
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * w * (*k)[i];
  }
  return out;
}

double norm(const std::vector<double>& y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return std::sqrt(s);
}

bool finite(const std::vector<double>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

double distance(const std::vector<double>& y, const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - p[i]) * (y[i] - p[i]);
  return std::sqrt(s);
}

void record(Orbit& orbit, double s, const std::vector<double>& y, double h) {
  orbit.s.push_back(s);
  orbit.y.push_back(y);
  ++orbit.accepted;
  orbit.min_step = orbit.accepted == 1 ? h : std::min(orbit.min_step, h);
  orbit.max_step = std::max(orbit.max_step, h);
}

void validate(const ShootingConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw DomainError("shooting offset epsilon must be positive");
  if (!(cfg.horizon > 0.0)) throw DomainError("shooting horizon must be positive");
  if (!(cfg.h > 0.0) || !(cfg.h_max > 0.0) || !(cfg.h_min > 0.0)) throw DomainError("step sizes must be positive");
  if (!(cfg.atol > 0.0) || !(cfg.rtol >= 0.0)) throw DomainError("integrator tolerances must be positive");
}

HornerPoly compile(const MultiPoly& p, const std::vector<VarId>& state) {
  for (VarId v : p.variables()) {
    if (std::find(state.begin(), state.end(), v) == state.end()) {
      throw DomainError("numeric evaluation needs a bound value for '" + p.registry()->name(v) + "'");
    }
  }
  return HornerPoly(p, state);
}

}  // namespace

VectorField::VectorField(const std::vector<MultiPoly>& rhs, std::vector<VarId> state) {
  if (rhs.size() != state.size()) throw DomainError("vector field dimension differs from the state dimension");
  for (const MultiPoly& p : rhs) rhs_.push_back(compile(p, state));
}

VectorField::VectorField(const ODESystemSpec& sys) : VectorField(sys.rhs(), sys.state) {}

VectorField::VectorField(const PlanarSystem& sys) : VectorField({sys.P, sys.Q}, {sys.x, sys.y}) {}

void VectorField::operator()(const std::vector<double>& y, std::vector<double>& dy) const {
  dy.resize(rhs_.size());
  for (std::size_t i = 0; i < rhs_.size(); ++i) dy[i] = rhs_[i](y);
}

std::string to_string(Integrator method) { return method == Integrator::RK4 ? "rk4" : "rkf45"; }

std::string to_string(OrbitStatus status) {
  switch (status) {
    case OrbitStatus::Completed: return "completed";
    case OrbitStatus::Diverged: return "diverged";
    case OrbitStatus::StepUnderflow: return "step-underflow";
    case OrbitStatus::StepLimit: return "step-limit";
  }
  return "unknown";
}

Orbit integrate(const VectorField& field, std::vector<double> y0, double s0, double s1, const ShootingConfig& cfg) {
  validate(cfg);
  if (y0.size() != field.dimension()) throw DomainError("initial state has the wrong dimension");
  if (!(s1 > s0)) throw DomainError("integration interval must have s1 > s0");
  Orbit orbit;
  orbit.method = cfg.method;
  orbit.s.push_back(s0);
  orbit.y.push_back(y0);

  std::vector<double> y = std::move(y0);
  double s = s0;
  std::vector<double> k1, k2, k3, k4, k5, k6;
  auto diverged = [&](const std::vector<double>& v) { return !finite(v) || norm(v) > cfg.divergence; };

  if (cfg.method == Integrator::RK4) {
    const auto steps = static_cast<std::size_t>(std::ceil((s1 - s0) / cfg.h - 1e-9));
    if (steps > cfg.max_steps) {
      orbit.status = OrbitStatus::StepLimit;
      return orbit;
    }
    for (std::size_t i = 1; i <= steps; ++i) {
      const double next = i == steps ? s1 : s0 + static_cast<double>(i) * cfg.h;
      const double h = next - s;
      field(y, k1);
      field(axpy(y, h / 2, {{1.0, &k1}}), k2);
      field(axpy(y, h / 2, {{1.0, &k2}}), k3);
      field(axpy(y, h, {{1.0, &k3}}), k4);
      std::vector<double> ny = axpy(y, h / 6, {{1.0, &k1}, {2.0, &k2}, {2.0, &k3}, {1.0, &k4}});
      if (diverged(ny)) {
        orbit.status = OrbitStatus::Diverged;
        return orbit;
      }
      y = std::move(ny);
      s = next;
      record(orbit, s, y, h);
    }
    return orbit;
  }

  // Fehlberg 4(5), advancing with the fifth-order solution.
  double h = std::min(cfg.h, cfg.h_max);
  std::size_t attempts = 0;
  while (s < s1) {
    if (++attempts > cfg.max_steps) {
      orbit.status = OrbitStatus::StepLimit;
      return orbit;
    }
    h = std::min(h, s1 - s);
    field(y, k1);
    field(axpy(y, h, {{1.0 / 4, &k1}}), k2);
    field(axpy(y, h, {{3.0 / 32, &k1}, {9.0 / 32, &k2}}), k3);
    field(axpy(y, h, {{1932.0 / 2197, &k1}, {-7200.0 / 2197, &k2}, {7296.0 / 2197, &k3}}), k4);
    field(axpy(y, h, {{439.0 / 216, &k1}, {-8.0, &k2}, {3680.0 / 513, &k3}, {-845.0 / 4104, &k4}}), k5);
    field(axpy(y, h, {{-8.0 / 27, &k1}, {2.0, &k2}, {-3544.0 / 2565, &k3}, {1859.0 / 4104, &k4}, {-11.0 / 40, &k5}}),
          k6);
    const std::vector<double> y5 = axpy(
        y, h, {{16.0 / 135, &k1}, {6656.0 / 12825, &k3}, {28561.0 / 56430, &k4}, {-9.0 / 50, &k5}, {2.0 / 55, &k6}});
    const std::vector<double> y4 =
        axpy(y, h, {{25.0 / 216, &k1}, {1408.0 / 2565, &k3}, {2197.0 / 4104, &k4}, {-1.0 / 5, &k5}});
    double err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double scale = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(y5[i] - y4[i]) / scale);
    }
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    if (err <= 1.0) {
      if (diverged(y5)) {
        orbit.status = OrbitStatus::Diverged;
        return orbit;
      }
      s = (s1 - s <= h) ? s1 : s + h;
      y = y5;
      orbit.max_error_estimate = std::max(orbit.max_error_estimate, err);
      record(orbit, s, y, h);
    } else {
      ++orbit.rejected;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = std::min(h * factor, cfg.h_max);
    if (s < s1 && h < cfg.h_min * std::max(1.0, std::abs(s))) {
      orbit.status = OrbitStatus::StepUnderflow;
      return orbit;
    }
  }
  return orbit;
}

ShootResult shoot_unstable_manifold(const PlanarSystem& sys, const Equilibrium& saddle, ShootDirection direction,
                                    const ShootingConfig& cfg, const std::optional<Equilibrium>& target,
                                    const std::vector<Equilibrium>& others) {
  validate(cfg);
  ShootResult out;
  out.eigen = jacobian_eigen(sys, saddle, sys.radicand());
  if (!out.eigen.saddle) throw DomainError("shooting needs a hyperbolic saddle: " + out.eigen.note);
  const std::array<double, 2> v = out.eigen.v_plus;
  const std::vector<double> p0 = saddle.coords;
  std::vector<double> plus{p0[0] + cfg.epsilon * v[0], p0[1] + cfg.epsilon * v[1]};
  std::vector<double> minus{p0[0] - cfg.epsilon * v[0], p0[1] - cfg.epsilon * v[1]};
  double sign = 1.0;
  switch (direction) {
    case ShootDirection::Plus: break;
    case ShootDirection::Minus: sign = -1.0; break;
    case ShootDirection::Toward:
    case ShootDirection::Away: {
      if (!target) throw DomainError("shooting toward or away from a target needs the target point");
      const bool plus_nearer = distance(plus, target->coords) <= distance(minus, target->coords);
      sign = (plus_nearer == (direction == ShootDirection::Toward)) ? 1.0 : -1.0;
      break;
    }
  }
  out.direction = {sign * v[0], sign * v[1]};
  const std::vector<double> start = sign > 0 ? plus : minus;
  out.start = {start[0], start[1]};
  out.orbit = integrate(VectorField(sys), start, 0.0, cfg.horizon, cfg);

  auto approach = [&](const Equilibrium& e) {
    Approach a{e, std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (std::size_t i = 0; i < out.orbit.s.size(); ++i) {
      const double d = distance(out.orbit.y[i], e.coords);
      if (d < a.closest) {
        a.closest = d;
        a.s_closest = out.orbit.s[i];
      }
    }
    a.terminal = distance(out.orbit.terminal(), e.coords);
    return a;
  };
  for (const Equilibrium& e : others) out.approaches.push_back(approach(e));
  if (target) {
    out.target = approach(*target);
    out.converged = out.orbit.ok() && out.target->terminal < cfg.tolerance;
  }
  return out;
}

OrbitResidual curve_residual_along_orbit(const MultiPoly& f, const std::vector<VarId>& state, const Orbit& orbit) {
  OrbitResidual r;
  if (f.is_zero() || orbit.s.empty()) return r;
  const HornerPoly field = compile(f, state);
  double sum = 0.0;
  for (std::size_t i = 0; i < orbit.s.size(); ++i) {
    const double a = std::abs(field(orbit.y[i]));
    sum += a;
    if (a > r.max_abs || i == 0) {
      r.max_abs = a;
      r.s_max = orbit.s[i];
    }
  }
  r.mean_abs = sum / static_cast<double>(orbit.s.size());
  return r;
}

ODEResidual ode_residual(const ClosedForm& U, const ODESystemSpec& sys, const std::vector<double>& grid, double k) {
  const HornerPoly field = compile(sys.G(), sys.state);
  ODEResidual r;
  r.symbolic = U.has_symbolic_derivative();
  // Derivative trees, built once.
  std::vector<ClosedForm> d{U};
  if (r.symbolic) {
    for (unsigned i = 1; i <= sys.n; ++i) d.push_back(d.back().derivative());
  }
  std::vector<double> state(sys.n);
  for (double s : grid) {
    for (unsigned i = 0; i < sys.n; ++i) state[i] = r.symbolic ? d[i](s, k) : U.derivative_at(s, i, k);
    const double top = r.symbolic ? d[sys.n](s, k) : U.derivative_at(s, sys.n, k);
    if (!std::isfinite(top) || !finite(state)) throw DomainError("profile is not finite at s = " + std::to_string(s));
    const double e = std::abs(top - field(state));
    if (e > r.max_abs) {
      r.max_abs = e;
      r.s_max = s;
    }
  }
  return r;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {a};
  for (std::size_t i = 0; i < n; ++i) out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

BoundaryCheck boundary_limit_check(const ClosedForm& U, double a, double b, double S, double tol, double k) {
  BoundaryCheck out;
  out.left = U(-S, k);
  out.right = U(S, k);
  out.limits = std::abs(out.left - a) < tol && std::abs(out.right - b) < tol;
  out.monotone_tails = true;
  constexpr int kSamples = 11;
  for (int side : {-1, 1}) {
    const double limit = side < 0 ? a : b;
    double previous = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSamples; ++i) {
      const double s = side * S * (0.9 + 0.1 * i / (kSamples - 1));
      const double dist = std::abs(U(s, k) - limit);
      if (!std::isfinite(dist) || dist > previous + 4 * std::numeric_limits<double>::epsilon()) out.monotone_tails = false;
      previous = std::min(previous, dist);
    }
  }
  out.passed = out.limits && out.monotone_tails;
  return out;
}

void write_csv(const Orbit& orbit, const std::vector<std::string>& names, std::ostream& out) {
  out << "s";
  for (const auto& n : names) out << ',' << n;
  out << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < orbit.s.size(); ++i) {
    out << orbit.s[i];
    for (double v : orbit.y[i]) out << ',' << v;
    out << '\n';
  }
}

}  // namespace dw
