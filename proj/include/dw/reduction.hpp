#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dw/error.hpp"
#include "dw/pde.hpp"
#include "dw/poly.hpp"

namespace dw {

/// Companion system y_1' = y_2, ..., y_{n-1}' = y_n, y_n' = G with
/// G = numerator / denominator. The denominator never involves the state
/// variables; it is folded into the numerator whenever it is a constant.
struct ODESystemSpec {
  unsigned n = 0;
  RegistryPtr registry;           // y1..yn, then "c" when the speed is symbolic, then free parameters
  std::vector<VarId> state;       // y1..yn
  std::optional<VarId> speed_var;  // set iff the speed is symbolic
  std::optional<QuadExt> speed;    // set iff the speed is bound
  MultiPoly numerator;
  MultiPoly denominator{1};
  /// Real speeds at which the top-derivative coefficient vanishes (symbolic speed only).
  std::vector<double> exceptional_speeds;
  std::vector<std::string> notes;

  bool is_polynomial() const { return denominator.is_constant(); }
  /// G as a polynomial; throws DomainError when the denominator is not constant.
  MultiPoly G() const;
  /// Right-hand sides y_2, ..., y_n, G.
  std::vector<MultiPoly> rhs() const;
};

/// Reduces E(u, u_x, u_t, ...) = 0 with u(x,t) = U(x - c t), mapping each
/// derivative (i, j) to (-c)^j U^{(i+j)}, and solves linearly for U^{(n)}.
/// A null `speed` keeps c symbolic.
ODESystemSpec travelling_wave_reduce(const PDESpec& spec, const std::optional<QuadExt>& speed);

/// Substitutes remaining parameters (and "c" if present in `binding`).
ODESystemSpec bind_system(const ODESystemSpec& sys, const ParamBinding& binding);

struct Equilibrium {
  bool exact = false;
  std::vector<QuadExt> exact_coords;  // valid when exact
  std::vector<double> coords;
  unsigned multiplicity = 1;
  double residual = 0.0;

  static Equilibrium exact_point(std::vector<QuadExt> coordinates);
};

/// Points (r, 0, ..., 0) with G(r, 0, ..., 0) = 0. Requires a bound speed and
/// no free parameter in G(y1, 0, ..., 0); throws DomainError when that
/// polynomial is identically zero (equilibrium continuum).
std::vector<Equilibrium> equilibria(const ODESystemSpec& sys, Radicand d = 1);

/// x' = P(x, y), y' = Q(x, y).
struct PlanarSystem {
  RegistryPtr registry;
  VarId x = 0;
  VarId y = 1;
  MultiPoly P;
  MultiPoly Q;

  unsigned degree() const { return std::max(P.total_degree(), Q.total_degree()); }
  Radicand radicand() const;
  /// Fresh registry holding exactly "x" and "y".
  static PlanarSystem make(const std::string& p_text, const std::string& q_text);
};

/// (x, y) := (y1, y2); requires n = 2 and a polynomial right-hand side.
PlanarSystem to_planar(const ODESystemSpec& sys);

struct EigenData {
  bool exact = false;
  QuadExt trace, determinant;                 // exact Jacobian invariants when the point is exact
  QuadExt lambda_minus, lambda_plus;          // valid when exact
  double lambda_minus_value = 0.0, lambda_plus_value = 0.0;
  bool real = true;
  bool hyperbolic = false;
  bool saddle = false;
  std::array<double, 2> v_minus{}, v_plus{};  // unit eigenvectors (real case)
  std::array<std::array<double, 2>, 2> jacobian{};
  std::string note;
};

/// Eigen-analysis of the Jacobian at an equilibrium. Exact eigenvalues are
/// produced when the discriminant has a square root in Q(sqrt(d)).
EigenData jacobian_eigen(const PlanarSystem& sys, const Equilibrium& eq, Radicand d = 1);

/// Square-free part used as radicand for the eigenvalues at `eq`, or nullopt
/// when the discriminant is not rational.
std::optional<Radicand> discriminant_radicand(const PlanarSystem& sys, const Equilibrium& eq);

/// new = A * old + b.
struct AffineMap {
  std::array<std::array<QuadExt, 2>, 2> A{{{QuadExt(1), QuadExt(0)}, {QuadExt(0), QuadExt(1)}}};
  std::array<QuadExt, 2> b{};

  static AffineMap identity() { return {}; }
  /// "1-x,y": new coordinates as affine expressions in the old x, y.
  static AffineMap parse(std::string_view text);
  QuadExt det() const { return A[0][0] * A[1][1] - A[0][1] * A[1][0]; }
  AffineMap inverse() const;
  AffineMap then(const AffineMap& next) const;  // next after this
  std::array<QuadExt, 2> apply(const std::array<QuadExt, 2>& p) const;
  std::string to_string() const;
};

/// Pushforward of the vector field; throws DomainError for a singular map.
PlanarSystem change_coordinates(const PlanarSystem& sys, const AffineMap& map);
Equilibrium map_point(const AffineMap& map, const Equilibrium& eq);
/// Pulls a polynomial in the new coordinates back to the old ones: f(A*old + b).
MultiPoly pull_back(const MultiPoly& f, const PlanarSystem& sys, const AffineMap& map);

class CommonComponent : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Eliminates y_n, ..., y_3 by successive resultants. `state` lists y1..yn.
/// A polynomial independent of the eliminated variable is carried unchanged; a
/// lone polynomial in that variable only closes the chain and is dropped.
/// Throws CommonComponent when a resultant vanishes identically.
MultiPoly resultant_chain_reduce(const std::vector<MultiPoly>& hypersurfaces, const std::vector<VarId>& state);

}  // namespace dw
