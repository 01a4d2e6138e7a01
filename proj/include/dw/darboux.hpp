#pragma once

#include <array>
#include <string>
#include <vector>

#include "dw/reduction.hpp"

namespace dw {

enum class CofactorSource { UserFixed, LambdaPlus, LambdaMinus, LambdaSum, Enumeration };

std::string to_string(CofactorSource source);

struct CofactorCandidate {
  MultiPoly k;
  CofactorSource source = CofactorSource::UserFixed;
};

using ExactPoint = std::array<QuadExt, 2>;

/// Weighted degree wx*i + wy*j of x^i y^j. A curve has graded degree n when its
/// monomials satisfy wx*i + wy*j <= wy*n. The default is the total degree;
/// {2, 3} is the quasi-homogeneous grading of x' = -y, y' = x^2 - x - c y, where graded degree
/// equals the degree in y and deg h_j follows the 3k / 3k-2 table.
struct Grading {
  unsigned wx = 1;
  unsigned wy = 1;

  unsigned weight(const Monomial& m, VarId x, VarId y) const { return wx * m.exponent(x) + wy * m.exponent(y); }
  /// Smallest n with weight <= wy * n.
  unsigned level(unsigned weight) const { return (weight + wy - 1) / wy; }
};

struct DarbouxResult {
  MultiPoly f;  // monic in y: the coefficient of the top power of y has leading coefficient 1
  MultiPoly k;
  CofactorSource source = CofactorSource::UserFixed;
  unsigned degree = 0;        // graded degree
  unsigned total_degree = 0;
  Grading grading;
  std::size_t nullspace_dim = 0;
  bool contains_required_points = false;
  bool irreducibility_screened = false;
  std::vector<std::string> notes;
};

/// P f_x + Q f_y - k f.
MultiPoly cofactor_residual(const PlanarSystem& sys, const MultiPoly& f, const MultiPoly& k);

/// f scaled so the coefficient polynomial of its highest power of y has
/// leading graded-lex coefficient 1.
MultiPoly normalize_curve(const MultiPoly& f, VarId y);

struct FixedCofactorOptions {
  /// Keep only solutions of graded degree exactly n (lower degrees belong to smaller searches).
  bool exact_degree = true;
  Grading grading;
};

/// Exact nullspace of the cofactor equation for f of graded degree <= n with
/// f(p) = 0 at every required point. One result per basis vector; the basis is
/// triangular, so each vector's degree is that of its free monomial.
std::vector<DarbouxResult> solve_fixed_cofactor(const PlanarSystem& sys, const MultiPoly& k, unsigned n,
                                                const std::vector<ExactPoint>& required_points,
                                                const FixedCofactorOptions& options = {});

struct CandidateReport {
  std::vector<CofactorCandidate> candidates;
  std::vector<std::string> warnings;
};

/// Constant cofactors {lambda+, lambda-, lambda+ + lambda-} at each saddle,
/// intersected across saddles. Non-saddles and inexact eigenvalues contribute
/// nothing (warning).
CandidateReport eigenvalue_cofactor_candidates(const PlanarSystem& sys, const std::vector<Equilibrium>& points,
                                               Radicand d);

/// True when f is not divisible by any lower-degree polynomial in `previous`
/// and is not a perfect power. A screen, not a certificate.
bool irreducibility_screen(const MultiPoly& f, const std::vector<MultiPoly>& previous);

/// g with g^e = f up to a constant, if one exists.
std::optional<MultiPoly> perfect_root(const MultiPoly& f, unsigned e);

struct SearchReport {
  std::vector<DarbouxResult> results;   // passed the screen, deduplicated
  std::vector<DarbouxResult> screened_out;
  std::vector<CofactorCandidate> candidates;
  std::vector<std::string> warnings;
};

/// Constant-cofactor search over eigenvalue candidates and degrees 1..max_degree.
SearchReport search_constant_cofactor(const PlanarSystem& sys, unsigned max_degree,
                                      const std::vector<Equilibrium>& required_points, Radicand d,
                                      Grading grading = {});

/// Monomials of graded degree <= n in x, y, ascending by weight, then graded-lex.
std::vector<Monomial> monomials_up_to(VarId x, VarId y, unsigned n, Grading grading = {});

}  // namespace dw
