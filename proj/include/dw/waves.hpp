#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dw/closed_form.hpp"
#include "dw/darboux.hpp"
#include "dw/pde.hpp"

namespace dw {

/// Registry holding "U" and "V" (V stands for U').
struct WaveSymbols {
  RegistryPtr registry;
  VarId U = 0;
  VarId V = 1;
};
WaveSymbols wave_symbols();

/// Scales p to integral coefficients with trivial content and a positive
/// leading coefficient.
MultiPoly primitive_part(const MultiPoly& p);

struct TravelingWave {
  ClosedForm profile;  // U(s); k is the family parameter
  Number speed;
  double a = 0.0;      // U(-inf)
  double b = 0.0;      // U(+inf)
  bool boundary_conditions = true;  // false when the profile has no limits at infinity
  WaveSymbols symbols;
  MultiPoly p;         // p(U, U') = 0 along the profile
  std::string source;  // "catalog" or "reconstructed"
  std::optional<QuadExt> exp_rate;  // mu when U is rational in exp(mu s)
  std::vector<std::string> notes;
};

/// p(U, U') = Res_z(q2 U - q1, q4 U' - q3) for U = q1(z)/q2(z), z = exp(lambda s),
/// with q4 = q2^2 and q3 = lambda z (q1' q2 - q1 q2'). A common power of z is
/// first compressed so the parametrization is generically one-to-one. The
/// result is returned as a primitive part. Throws DomainError for a constant
/// profile, q2 = 0 or lambda = 0.
MultiPoly p_from_exp_rational(const MultiPoly& q1, const MultiPoly& q2, const QuadExt& lambda);

/// y = (-h1 + sign sqrt(h1^2 - 4 h2 h0)) / (2 h2) for f = h2 y^2 + h1 y + h0,
/// written in U with x = alpha U + beta.
struct BranchODE {
  WaveSymbols symbols;
  MultiPoly h2, h1, h0;  // in U
  MultiPoly discriminant;
  int sign = 1;
  unsigned multiplicity = 1;  // 2 when the discriminant vanishes identically
  ClosedForm rhs;             // U' = rhs(U); the closed-form variable is U
  std::vector<std::string> notes;
};

/// Throws DomainError when f is not quadratic in y or when the discriminant is
/// negative at every sample of [u_min, u_max].
BranchODE branch_ode(const MultiPoly& f, VarId x, VarId y, int sign, const QuadExt& alpha, const QuadExt& beta,
                     double u_min = 0.0, double u_max = 1.0);

/// Solutions of U' = alpha (U - u1)(U - u3):
/// U = (u3 + k u1 e^{alpha (u3 - u1) s}) / (1 + k e^{alpha (u3 - u1) s}), k > 0.
/// k = 0 gives the constant u3 and is not part of the family.
struct LogisticFamily {
  ClosedForm profile;
  Number rate;     // alpha (u3 - u1)
  double a = 0.0;  // U(-inf)
  double b = 0.0;  // U(+inf)
};
LogisticFamily solve_logistic(const Number& alpha, const Number& u1, const Number& u3);

/// Solutions of U' = kappa U (U^q - 1): U = (1 + k e^{q kappa s})^{-1/q}.
LogisticFamily solve_power_logistic(unsigned q, const Number& kappa);

/// Closed-form wave from a curve whose branch through U = 1 (x = 1 - U) is
/// U' = -A (1 - sqrt(U)) U; W = sqrt(U) solves a logistic equation. Throws
/// DomainError on a pattern mismatch.
TravelingWave fisher_reconstruct(const DarbouxResult& curve, const PlanarSystem& sys, const Number& speed);

/// System x' = y, y' = -(c/d) y + f(x)(f'(x) + c/d) with invariant curve
/// y - f(x) and cofactor -(f'(x) + c/d). When d is not a constant (symbolic),
/// the field and cofactor are multiplied by d, which keeps every coefficient
/// polynomial and only rescales time.
struct FamilyCurve {
  PlanarSystem sys;
  DarbouxResult curve;
  bool time_scaled = false;
  bool residual_zero = false;
  std::optional<TravelingWave> wave;  // when U' = f(U) matches a solved family
  std::vector<std::string> notes;
};
/// f is a polynomial in x (its registry may hold coefficient symbols); c and d
/// are constants or polynomials in those symbols. Throws DomainError for a
/// constant d <= 0.
FamilyCurve family_curve(const MultiPoly& f, VarId x, const MultiPoly& c, const MultiPoly& d);

struct ParamSpec {
  std::string name;
  std::string range;  // human-readable
  std::function<bool(const QuadExt&)> admissible;
};

struct CatalogEntry {
  std::string name;
  std::string pde;  // as displayed; may contain symbolic exponents
  /// Parseable PDE text for a binding (remaining parameters stay symbolic).
  std::function<std::string(const ParamBinding&)> pde_for;
  std::vector<ParamSpec> params;
  std::string profile_text;
  std::string p_text;
  bool exp_rational = false;
  ParamBinding defaults;
  std::vector<ParamBinding> samples;  // five points inside the ranges
  std::function<TravelingWave(const ParamBinding&)> build;
};

const std::vector<CatalogEntry>& catalog();
/// Throws DomainError for an unknown name.
const CatalogEntry& catalog_entry(const std::string& name);
/// Defaults overridden by `overrides`; throws DomainError for unknown or
/// inadmissible parameters.
ParamBinding resolve_params(const CatalogEntry& entry, const ParamBinding& overrides);

struct WaveResidual {
  double max_abs = 0.0;
  double tolerance = 0.0;
  bool symbolic_derivative = false;
  std::size_t samples = 0;
  std::optional<bool> identically_zero;  // exp-rational check when available
  bool passed = false;
};

/// max |p(U(s), U'(s))| over an evenly spaced grid (k = 1). Tolerance 1e-8
/// unless given.
WaveResidual wave_residual(const TravelingWave& wave, double s_min = -10.0, double s_max = 10.0,
                           std::size_t samples = 201, std::optional<double> tolerance = std::nullopt);

}  // namespace dw
