#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dw/closed_form.hpp"
#include "dw/reduction.hpp"

namespace dw {

/// Double-precision right-hand side y' = F(y) compiled from exact polynomials.
class VectorField {
 public:
  /// Throws DomainError when a polynomial involves a variable outside `state`.
  VectorField(const std::vector<MultiPoly>& rhs, std::vector<VarId> state);
  /// Companion system; requires a bound speed and a polynomial right-hand side.
  explicit VectorField(const ODESystemSpec& sys);
  explicit VectorField(const PlanarSystem& sys);

  std::size_t dimension() const { return rhs_.size(); }
  void operator()(const std::vector<double>& y, std::vector<double>& dy) const;

 private:
  std::vector<HornerPoly> rhs_;
};

enum class Integrator { RKF45, RK4 };
std::string to_string(Integrator method);

struct ShootingConfig {
  double epsilon = 1e-6;  // offset along the unstable eigenvector
  Integrator method = Integrator::RKF45;
  double atol = 1e-10;
  double rtol = 1e-10;
  double h = 1e-3;        // RK4 step; initial RKF45 step
  double h_max = 0.5;
  double h_min = 1e-14;   // relative to max(1, |s|)
  double horizon = 60.0;  // integrate over [0, horizon]
  double tolerance = 1e-6;
  double divergence = 1e12;
  std::size_t max_steps = 5'000'000;
};

enum class OrbitStatus { Completed, Diverged, StepUnderflow, StepLimit };
std::string to_string(OrbitStatus status);

struct Orbit {
  std::vector<double> s;
  std::vector<std::vector<double>> y;
  Integrator method = Integrator::RKF45;
  OrbitStatus status = OrbitStatus::Completed;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double max_error_estimate = 0.0;  // largest scaled local error of an accepted RKF45 step
  double min_step = 0.0;
  double max_step = 0.0;

  bool ok() const { return status == OrbitStatus::Completed; }
  const std::vector<double>& terminal() const { return y.back(); }
};

/// Integrates over [s0, s1] (s1 > s0), recording every accepted step.
/// Divergence, step underflow and the step limit end the orbit early and are
/// reported through `status`.
Orbit integrate(const VectorField& field, std::vector<double> y0, double s0, double s1, const ShootingConfig& cfg = {});

enum class ShootDirection { Toward, Away, Plus, Minus };

struct Approach {
  Equilibrium point;
  double closest = 0.0;
  double s_closest = 0.0;
  double terminal = 0.0;
};

struct ShootResult {
  EigenData eigen;
  std::array<double, 2> start{};
  std::array<double, 2> direction{};  // signed unit unstable eigenvector
  Orbit orbit;
  std::vector<Approach> approaches;   // one per other equilibrium
  std::optional<Approach> target;
  bool converged = false;             // terminal distance to the target below cfg.tolerance
};

/// Starts at saddle + epsilon * v, v the unstable eigenvector. Toward/Away pick
/// the sign by whether the first point is nearer to `target`; Plus/Minus use
/// the eigenvector as returned by jacobian_eigen. Throws DomainError when the
/// point is not a hyperbolic saddle, or for Toward/Away without a target.
ShootResult shoot_unstable_manifold(const PlanarSystem& sys, const Equilibrium& saddle, ShootDirection direction,
                                    const ShootingConfig& cfg = {}, const std::optional<Equilibrium>& target = {},
                                    const std::vector<Equilibrium>& others = {});

struct OrbitResidual {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double s_max = 0.0;
};

/// |f| at every sample; `state` maps the orbit components to variables of f.
OrbitResidual curve_residual_along_orbit(const MultiPoly& f, const std::vector<VarId>& state, const Orbit& orbit);

struct ODEResidual {
  double max_abs = 0.0;
  double s_max = 0.0;
  bool symbolic = false;  // derivatives from the expression tree
};

/// max |U^(n) - G(U, U', ..., U^(n-1))| over the grid.
ODEResidual ode_residual(const ClosedForm& U, const ODESystemSpec& sys, const std::vector<double>& grid, double k = 1.0);

std::vector<double> linspace(double a, double b, std::size_t n);

struct BoundaryCheck {
  double left = 0.0;   // U(-S)
  double right = 0.0;  // U(S)
  bool limits = false;
  bool monotone_tails = false;
  bool passed = false;
};

/// |U(-S) - a| < tol, |U(S) - b| < tol, and |U - limit| nonincreasing over
/// the outermost tenth of each half-line.
BoundaryCheck boundary_limit_check(const ClosedForm& U, double a, double b, double S = 40.0, double tol = 1e-6,
                                   double k = 1.0);

/// Header "s,<names...>", one row per sample, 17 significant digits.
void write_csv(const Orbit& orbit, const std::vector<std::string>& names, std::ostream& out);

}  // namespace dw
