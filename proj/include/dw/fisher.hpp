#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dw/darboux.hpp"

namespace dw {

/// Leading coefficients a_j(2m), j = 0..2m, of h_j(x) for a degree-2m
/// invariant curve of x' = -y, y' = -x - c y + x^2 with cofactor c0, as
/// polynomials in the indeterminates c0 and c.
struct LeadingCoeffTable {
  unsigned m = 0;
  RegistryPtr registry;  // "c0", "c"
  VarId c0 = 0;
  VarId c = 1;
  std::vector<MultiPoly> a;  // a[j]
};

/// Registry holding the symbols c0 and c, in that order.
RegistryPtr fisher_symbols();

/// Direct evaluation of the even/odd recurrences from a_{2m} = 1, a_{2m-1} = -(c0 + 2mc).
LeadingCoeffTable leading_coeffs_recurrence(unsigned m, const RegistryPtr& symbols = nullptr);

/// (5/6)^[m] / (1/3)^[m].
Rat gamma_m(unsigned m);

struct ClosedFormCoeffs {
  Rat a0;        // (2/3)^m
  MultiPoly a1;  // (1/5)(2/3)^m (5 c0 - (5 c0 + 6 m c) gamma(m))
  Rat gamma;
};
ClosedFormCoeffs leading_coeffs_closed_form(unsigned m, const RegistryPtr& symbols = nullptr);

/// C(m, j) (2/3)^j, the closed form of a_{2m-2j}.
Rat even_coefficient(unsigned m, unsigned j);

struct GammaIdentityCheck {
  unsigned m = 0;
  bool vandermonde = false;  // sum C(m,j) x^[j] y^[m-j] = (x+y)^[m]
  bool weighted = false;     // sum C(m,j)(m-j) x^[j] y^[m-j] = m y (x+y+1)^[m-1]
};
std::vector<GammaIdentityCheck> verify_gamma_identities(unsigned m_max);

/// Rising factorial p (p+1) ... (p+m-1) of a polynomial.
MultiPoly rising_factorial(const MultiPoly& p, unsigned m);

enum class CofactorChoice { LambdaPlus, LambdaMinus, LambdaSum };
std::string to_string(CofactorChoice choice);

struct SpeedCertificate {
  unsigned m = 0;
  CofactorChoice choice = CofactorChoice::LambdaMinus;
  Rat c_squared;
  QuadExt c;   // exact speed implied by the branch (sign included)
  QuadExt c0;  // cofactor value -6mc/5 (or -c for the sum)
  bool admissible = false;
  std::string note;
};

/// Combines 5 c0 + 6 m c = 0 with the characteristic relation at the origin.
SpeedCertificate consistency_condition(unsigned m, CofactorChoice choice);

struct CertifyOptions {
  unsigned gamma_m_max = 10;
  unsigned recurrence_m_max = 20;
  unsigned m_min = 1;
  unsigned m_max = 100;
  std::optional<Radicand> radicand;  // default: the radicand of the admissible speed
};

struct RecurrenceCheck {
  unsigned m = 0;
  bool even_ok = false;
  bool a1_ok = false;
};

struct StageStatus {
  std::string name;
  bool passed = false;
  std::string diagnostics;
};

struct CurveCertificate {
  CertifyOptions options;
  std::vector<StageStatus> stages;
  bool passed = false;
  bool negative = false;  // no admissible speed in the enumerated range

  std::vector<GammaIdentityCheck> gamma;
  std::vector<RecurrenceCheck> recurrence;
  std::vector<SpeedCertificate> speeds;
  std::vector<SpeedCertificate> admissible;
  bool monotone = false;

  std::optional<PlanarSystem> system;
  std::optional<DarbouxResult> curve;
  std::size_t nullspace_dim = 0;
  std::vector<std::string> degree_flags;
  bool leading_coefficients_ok = false;
  bool residual_zero = false;
  bool p_matches = false;
  MultiPoly p;  // 3 f(1-U, V) in the variables U, V
};

/// The PDE whose reduction yields the certified system.
inline constexpr const char* kFisherPde = "u_t = u_xx + u*(1-u)";

/// Expected curve f(x, y) = y^2 + (2/3)sqrt(6)(1-x)y + (2/3)x(1-x)^2 in the registry of sys.
MultiPoly expected_fisher_curve(const PlanarSystem& sys);

CurveCertificate certify(const CertifyOptions& options = {});

}  // namespace dw
